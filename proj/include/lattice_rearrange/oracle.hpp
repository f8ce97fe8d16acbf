#pragma once

// Exhaustive optimum over the full pick-n-swap state space of small
// instances. Used as ground truth by the test suites; refuses large inputs.

#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "graphs.hpp"
#include "lor.hpp"

namespace lattice_rearrange {

enum class Objective { lexicographic, weighted_total };

// Picks first, then travel (absolute tolerance travel_tolerance).
struct LexCost {
  int picks = 0;
  double travel = 0.0;

  friend bool operator<(const LexCost& a, const LexCost& b) {
    if (a.picks != b.picks) return a.picks < b.picks;
    return a.travel < b.travel - travel_tolerance;
  }
  friend bool operator==(const LexCost& a, const LexCost& b) {
    return a.picks == b.picks && std::abs(a.travel - b.travel) <= travel_tolerance;
  }
};

struct OracleResult {
  Plan plan;
  LexCost cost;
  double total = 0.0;
  std::size_t expanded = 0;
};

inline constexpr double default_oracle_cap = 5e7;

// Upper estimate of reachable (configuration, hand, position) states.
inline double estimate_states(const Instance& inst) {
  const int n = inst.size();
  double configs = 1.0;
  if (inst.labeled()) {
    for (int i = 2; i <= n; ++i) configs *= i;
    return configs * (n + 1) * n;
  }
  std::vector<int> counts(static_cast<std::size_t>(inst.types) + 1, 0);
  for (int t : inst.start) ++counts[t];
  // multinomial n! / prod(c_t!) computed incrementally
  int placed = 0;
  for (int t = 1; t <= inst.types; ++t)
    for (int j = 1; j <= counts[t]; ++j) configs = configs * (++placed) / j;
  return configs * (1.0 + static_cast<double>(n) * inst.types) * n;
}

namespace detail {

class StateSpace {
public:
  explicit StateSpace(int n) : n_(n) {}

  std::uint64_t encode(const Configuration& cfg, int held, int pos) const {
    std::uint64_t code = 0;
    for (int i = 0; i < n_; ++i) code |= static_cast<std::uint64_t>(cfg[i]) << (4 * i);
    code |= static_cast<std::uint64_t>(held) << (4 * n_);
    code |= static_cast<std::uint64_t>(pos) << (4 * (n_ + 1));
    return code;
  }
  int cell(std::uint64_t code, int c) const { return static_cast<int>((code >> (4 * (c - 1))) & 15u); }
  int held(std::uint64_t code) const { return static_cast<int>((code >> (4 * n_)) & 15u); }
  int pos(std::uint64_t code) const { return static_cast<int>((code >> (4 * (n_ + 1))) & 15u); }
  std::uint64_t with_cell(std::uint64_t code, int c, int v) const {
    const int shift = 4 * (c - 1);
    return (code & ~(std::uint64_t{15} << shift)) | (static_cast<std::uint64_t>(v) << shift);
  }
  std::uint64_t with_hand(std::uint64_t code, int held, int pos) const {
    const int shift = 4 * n_;
    code &= ~(std::uint64_t{0xFF} << shift);
    return code | (static_cast<std::uint64_t>(held) << shift) |
           (static_cast<std::uint64_t>(pos) << (shift + 4));
  }

private:
  int n_;
};

}  // namespace detail

// Uniform-cost search from (start, empty hand, rest) to (goal, empty hand)
// plus the closing leg to rest. Each transition flies the end-effector
// straight to a cell and performs the one legal action there.
inline OracleResult oracle_optimal(const Instance& inst, const CostModel& model = {},
                                   Objective objective = Objective::lexicographic,
                                   double cap = default_oracle_cap) {
  const int n = inst.size();
  const double estimate = estimate_states(inst);
  if (n > 14 || estimate > cap)
    throw rearrange_error("TooLarge", "estimated " + std::to_string(estimate) + " states exceeds the cap");

  constexpr double scale = 1e9;
  constexpr std::uint64_t terminal = ~std::uint64_t{0};
  const detail::StateSpace space(n);

  struct Node {
    std::int64_t primary;
    std::int64_t secondary;
    int picks;
    std::int64_t units;
    double travel;
    std::uint64_t parent;
    PlanStep step;
  };
  using Key = std::tuple<std::int64_t, std::int64_t, std::uint64_t>;
  auto priority = [&](int picks, std::int64_t travel_units) -> std::pair<std::int64_t, std::int64_t> {
    if (objective == Objective::lexicographic) return {picks, travel_units};
    const auto total = std::llround(picks * model.pick_cost * scale) +
                       static_cast<std::int64_t>(std::llround(travel_units * model.travel_cost));
    return {total, picks};
  };

  std::vector<std::vector<std::int64_t>> leg(n + 1, std::vector<std::int64_t>(n + 1));
  std::vector<std::vector<double>> leg_exact(n + 1, std::vector<double>(n + 1));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      leg_exact[a][b] = distance(inst.dims, a, b, model);
      leg[a][b] = std::llround(leg_exact[a][b] * scale);
    }

  std::unordered_map<std::uint64_t, Node> nodes;
  nodes.reserve(static_cast<std::size_t>(std::min(estimate, 4e6)));
  std::priority_queue<Key, std::vector<Key>, std::greater<>> frontier;

  const auto start = space.encode(inst.start, 0, inst.rest);
  const auto goal = space.encode(inst.goal, 0, 0);
  const auto hand_mask = ~(std::uint64_t{0xFF} << (4 * n));
  nodes[start] = {0, 0, 0, 0, 0.0, start, {}};
  frontier.push({0, 0, start});

  OracleResult result;
  while (!frontier.empty()) {
    const auto [p, s, code] = frontier.top();
    frontier.pop();
    const Node node = nodes.at(code);
    if (node.primary != p || node.secondary != s) continue;
    if (code == terminal) break;
    ++result.expanded;
    const auto units = node.units;
    const int held = space.held(code);
    const int pos = space.pos(code);

    auto relax = [&](std::uint64_t next, int picks, std::int64_t next_units, double travel, PlanStep step) {
      const auto [np, ns] = priority(picks, next_units);
      auto it = nodes.find(next);
      if (it != nodes.end() && std::tie(it->second.primary, it->second.secondary) <= std::tie(np, ns)) return;
      nodes[next] = {np, ns, picks, next_units, travel, code, step};
      frontier.push({np, ns, next});
    };

    if (held == 0 && (code & hand_mask) == (goal & hand_mask)) {
      relax(terminal, node.picks, units + leg[pos][inst.rest], node.travel + leg_exact[pos][inst.rest], {});
      continue;
    }
    for (int c = 1; c <= n; ++c) {
      const int item = space.cell(code, c);
      std::uint64_t next;
      Action action;
      if (held == 0) {
        if (item == 0) continue;
        next = space.with_hand(space.with_cell(code, c, 0), item, c);
        action = Action::pick;
      } else if (item != 0) {
        next = space.with_hand(space.with_cell(code, c, held), item, c);
        action = Action::swap;
      } else {
        next = space.with_hand(space.with_cell(code, c, held), 0, c);
        action = Action::place;
      }
      relax(next, node.picks + 1, units + leg[pos][c], node.travel + leg_exact[pos][c], {c, action});
    }
  }

  const auto it = nodes.find(terminal);
  if (it == nodes.end()) throw rearrange_error("Unsolvable", "goal configuration unreachable");
  std::vector<PlanStep> steps;
  for (auto code = it->second.parent; code != start; code = nodes.at(code).parent)
    steps.push_back(nodes.at(code).step);
  result.plan.steps.assign(steps.rbegin(), steps.rend());
  result.cost = {it->second.picks, it->second.travel};
  result.total = result.cost.picks * model.pick_cost + result.cost.travel * model.travel_cost;
  return result;
}

// Closed-form minimum pick count. Labeled: misplaced items plus nontrivial
// cycles. Typed: misplaced cells plus the number of connected components of
// the graph on types with one edge (goal type, start type) per misplaced
// cell; cycles sharing a type can always be merged into one, and no plan
// does better.
inline int oracle_min_picks(const Instance& inst) {
  if (inst.labeled()) return labeled_min_picks(inst.start);
  detail::DisjointSets sets(inst.types + 1);
  std::vector<char> used(static_cast<std::size_t>(inst.types) + 1, 0);
  int misplaced = 0;
  for (std::size_t i = 0; i < inst.start.size(); ++i) {
    if (inst.start[i] == inst.goal[i]) continue;
    ++misplaced;
    sets.unite(inst.start[i], inst.goal[i]);
    used[inst.start[i]] = used[inst.goal[i]] = 1;
  }
  int components = 0;
  for (int t = 1; t <= inst.types; ++t) components += used[t] && sets.find(t) == t;
  return misplaced + components;
}

}  // namespace lattice_rearrange
