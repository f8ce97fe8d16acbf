#pragma once

// Two-dimensional planners. Labeled: cycle sweeping and arborescence-guided
// cycle switching. Typed: assignment-based cycle formation, forest merging
// and an arborescence sweep. Plus goal layouts and the cycle distance
// statistic used by the benchmarks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "core.hpp"
#include "graphs.hpp"
#include "lor.hpp"
#include "move_cycles.hpp"
#include "por.hpp"

namespace lattice_rearrange {

enum class PatternKind { aggregated, pattern_a, pattern_b, explicit_goal };

struct GoalPattern {
  PatternKind kind = PatternKind::aggregated;
  Configuration goal;  // used by explicit_goal only

  static GoalPattern aggregated() { return {PatternKind::aggregated, {}}; }
  static GoalPattern pattern_a() { return {PatternKind::pattern_a, {}}; }
  static GoalPattern pattern_b() { return {PatternKind::pattern_b, {}}; }
  static GoalPattern explicit_goal(Configuration goal) { return {PatternKind::explicit_goal, std::move(goal)}; }
};

struct GoalLayout {
  Configuration goal;
  bool fallback = false;  // pattern A did not tile; row-major runs were used
};

inline int exact_sqrt(int k) {
  int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(k))));
  return s * s == k ? s : 0;
}

// Whether k types tile the lattice as sqrt(k) x sqrt(k) equal blocks.
inline bool pattern_a_tiles(const LatticeDims& dims, int k) {
  const int s = exact_sqrt(k);
  return s > 0 && dims.m1 % s == 0 && dims.m2 % s == 0;
}

// Type owning `cell` under pattern A; blocks are numbered column-major.
inline int pattern_a_block(const LatticeDims& dims, int k, int cell) {
  const int s = exact_sqrt(k);
  const int br = (dims.row(cell) - 1) / (dims.m1 / s);
  const int bc = (dims.col(cell) - 1) / (dims.m2 / s);
  return bc * s + br + 1;
}

// Goal layout for k types. counts[t - 1] items of type t, used by the
// aggregated layout (contiguous runs in cell order); patterns A and B fix
// their own counts and reject counts that disagree.
inline GoalLayout layout_goal(const LatticeDims& dims, int k, const std::vector<int>& counts,
                              const GoalPattern& pattern) {
  const int n = dims.size();
  GoalLayout out;
  out.goal.assign(static_cast<std::size_t>(n), 0);
  auto check_counts = [&] {
    if (counts.empty()) return;
    std::vector<int> have(static_cast<std::size_t>(k), 0);
    for (int t : out.goal) ++have[t - 1];
    if (have != counts) throw rearrange_error("BadCounts", "counts do not match the goal pattern");
  };
  switch (pattern.kind) {
    case PatternKind::aggregated: {
      if (static_cast<int>(counts.size()) != k) throw rearrange_error("BadCounts", "need one count per type");
      int c = 0;
      for (int t = 1; t <= k; ++t) {
        if (counts[t - 1] < 0) throw rearrange_error("BadCounts", "negative count");
        for (int j = 0; j < counts[t - 1]; ++j) {
          if (c >= n) throw rearrange_error("BadCounts", "counts exceed the lattice size");
          out.goal[c++] = t;
        }
      }
      if (c != n) throw rearrange_error("BadCounts", "counts must sum to m1*m2");
      break;
    }
    case PatternKind::pattern_a:
      if (k < 1 || k > n) throw rearrange_error("PatternInfeasible", "pattern A needs 1 <= k <= n");
      if (pattern_a_tiles(dims, k)) {
        for (int c = 1; c <= n; ++c) out.goal[c - 1] = pattern_a_block(dims, k, c);
      } else {
        if (n % k != 0) throw rearrange_error("PatternInfeasible", "pattern A fallback needs k to divide n");
        out.fallback = true;
        const int run = n / k;
        for (int r = 0; r < dims.m1; ++r)
          for (int col = 0; col < dims.m2; ++col) {
            const int order = r * dims.m2 + col;
            out.goal[dims.index(r + 1, col + 1) - 1] = order / run + 1;
          }
      }
      check_counts();
      break;
    case PatternKind::pattern_b:
      if (k != dims.m2) throw rearrange_error("PatternInfeasible", "pattern B needs k == m2");
      for (int c = 1; c <= n; ++c) out.goal[c - 1] = dims.col(c);
      check_counts();
      break;
    case PatternKind::explicit_goal:
      if (static_cast<int>(pattern.goal.size()) != n)
        throw rearrange_error("PatternInfeasible", "explicit goal must have m1*m2 entries");
      out.goal = pattern.goal;
      for (int t : out.goal)
        if (t < 1 || t > k) throw rearrange_error("PatternInfeasible", "explicit goal type out of range");
      check_counts();
      break;
  }
  return out;
}

namespace detail {

// Cycles nested under one another. A child hooked on edge e of its parent is
// run while the parent's item from cells[e] is in hand: the item is parked at
// the child's entry cell, the child is followed, and the closing swap at the
// entry takes the parent's item back. Root children run one after another
// from the rest cell.
struct Hook {
  int child = 0;
  int entry = 0;  // index into the child's cells
};

struct NestedCycles {
  std::vector<std::vector<int>> cycles;
  std::vector<std::vector<std::vector<Hook>>> hooks;  // [cycle][edge]
  std::vector<Hook> roots;

  explicit NestedCycles(std::vector<std::vector<int>> c) : cycles(std::move(c)), hooks(cycles.size()) {
    for (std::size_t i = 0; i < cycles.size(); ++i) hooks[i].resize(cycles[i].size());
  }

  Plan run() const {
    Plan plan;
    for (const auto& h : roots) process(plan, h, false);
    return plan;
  }

private:
  void process(Plan& plan, const Hook& hook, bool parked) const {
    const auto& cells = cycles[hook.child];
    const std::size_t len = cells.size();
    const std::size_t s = static_cast<std::size_t>(hook.entry);
    if (parked) plan.swap(cells[s]);
    else plan.pick(cells[s]);
    for (std::size_t k = 0; k < len; ++k) {
      const std::size_t e = (s + k) % len;
      for (const auto& h : hooks[hook.child][e]) process(plan, h, true);
      const int dst = cells[(e + 1) % len];
      if (k + 1 < len || parked) plan.swap(dst);
      else plan.place(dst);
    }
  }
};

struct ArcChoice {
  double weight = std::numeric_limits<double>::infinity();
  int edge = 0;
  int entry = 0;
};

enum class ArcRule { edge_detour, nearest_vertex };

// Builds the arborescence over {rest} U cycles and nests the cycles along
// it. Vertex 0 is the rest cell, vertex i + 1 is cycles[i].
inline NestedCycles nest_by_arborescence(const LatticeDims& dims, std::vector<std::vector<int>> cycles, int rest,
                                         Metric metric, ArcRule rule, double* arborescence_weight = nullptr) {
  const int count = static_cast<int>(cycles.size());
  NestedCycles nested(std::move(cycles));
  const auto& cyc = nested.cycles;
  if (count == 0) {
    if (arborescence_weight) *arborescence_weight = 0.0;
    return nested;
  }
  auto d = [&](int a, int b) { return distance(dims, a, b, metric); };

  WeightedGraph graph;
  graph.vertex_count = count + 1;
  graph.directed = true;
  std::vector<ArcChoice> choice;
  for (int b = 0; b < count; ++b) {
    ArcChoice best;
    for (std::size_t w = 0; w < cyc[b].size(); ++w) {
      const double x = rule == ArcRule::edge_detour ? 2.0 * d(rest, cyc[b][w]) : d(rest, cyc[b][w]);
      if (x < best.weight) best = {x, 0, static_cast<int>(w)};
    }
    graph.edges.push_back({0, b + 1, best.weight});
    choice.push_back(best);
  }
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b) {
      if (a == b) continue;
      ArcChoice best;
      const auto& ca = cyc[a];
      for (std::size_t e = 0; e < ca.size(); ++e) {
        const int u = ca[e];
        const int v = ca[(e + 1) % ca.size()];
        const double base = d(u, v);
        for (std::size_t w = 0; w < cyc[b].size(); ++w) {
          const int x = cyc[b][w];
          const double cost = rule == ArcRule::edge_detour ? d(u, x) + d(x, v) - base : d(u, x);
          if (cost < best.weight - 1e-12) best = {std::max(0.0, cost), static_cast<int>(e), static_cast<int>(w)};
        }
      }
      graph.edges.push_back({a + 1, b + 1, best.weight});
      choice.push_back(best);
    }

  const auto tree = min_arborescence(graph, 0);
  if (arborescence_weight) *arborescence_weight = tree.weight;

  std::vector<Hook> root_children;
  for (std::size_t idx : tree.edges) {
    const auto& arc = graph.edges[idx];
    const auto& ch = choice[idx];
    const Hook hook{arc.v - 1, ch.entry};
    if (arc.u == 0) root_children.push_back(hook);
    else nested.hooks[arc.u - 1][ch.edge].push_back(hook);
  }
  // Several children on one edge are entered in order of distance from the
  // edge's source.
  for (int a = 0; a < count; ++a)
    for (std::size_t e = 0; e < nested.hooks[a].size(); ++e) {
      auto& hs = nested.hooks[a][e];
      const int u = cyc[a][e];
      std::stable_sort(hs.begin(), hs.end(), [&](const Hook& x, const Hook& y) {
        const int cx = cyc[x.child][x.entry];
        const int cy = cyc[y.child][y.entry];
        const double dx = d(u, cx);
        const double dy = d(u, cy);
        if (dx != dy) return dx < dy;
        return cx < cy;
      });
    }
  // Root children: nearest entry first, starting at the rest cell.
  int pos = rest;
  while (!root_children.empty()) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < root_children.size(); ++j) {
      const int cj = cyc[root_children[j].child][root_children[j].entry];
      const int cb = cyc[root_children[best].child][root_children[best].entry];
      const double dj = d(pos, cj);
      const double db = d(pos, cb);
      if (dj < db - 1e-12 || (dj <= db + 1e-12 && cj < cb)) best = j;
    }
    pos = cyc[root_children[best].child][root_children[best].entry];
    nested.roots.push_back(root_children[best]);
    root_children.erase(root_children.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return nested;
}

inline void require_kind(const Instance& inst, InstanceKind kind) {
  if (inst.kind != kind)
    throw invalid_instance(kind == InstanceKind::labeled ? "planner requires a labeled instance"
                                                         : "planner requires a typed instance");
}

}  // namespace detail

// Cycles by minimum column-major cell, each followed to completion.
inline Plan sweep_cycles_ltr(const Instance& inst, const CostModel& = {}) {
  detail::require_kind(inst, InstanceKind::labeled);
  return follow_cycles(permutation_cycles(inst.start).cycles);
}

// Cycle switching along a minimum arborescence. The arc weight from cycle a
// to cycle b is the cheapest detour u -> w -> v over edges (u, v) of a and
// cells w of b; from the rest cell it is the round trip to w. When the
// arborescence order happens to travel more than the plain sweep, the sweep
// is returned, so the result never travels further than sweep_cycles_ltr.
inline Plan switch_cycles_ltr(const Instance& inst, const CostModel& model = {}) {
  detail::require_kind(inst, InstanceKind::labeled);
  auto cycles = permutation_cycles(inst.start).cycles;
  const auto sweep = follow_cycles(cycles);
  const auto nested = detail::nest_by_arborescence(inst.dims, std::move(cycles), inst.rest, model.metric,
                                                   detail::ArcRule::edge_detour);
  auto plan = nested.run();
  if (simulate(inst, sweep, model).cost.travel < simulate(inst, plan, model).cost.travel - travel_tolerance)
    return sweep;
  return plan;
}

inline std::vector<int> form_cycles_ptr_next(const Instance& inst) {
  const int n = inst.size();
  std::vector<std::vector<int>> sources(static_cast<std::size_t>(inst.types) + 1);
  std::vector<std::vector<int>> goals(static_cast<std::size_t>(inst.types) + 1);
  for (int c = 1; c <= n; ++c) {
    if (inst.start[c - 1] == inst.goal[c - 1]) continue;
    sources[inst.start[c - 1]].push_back(c);
    goals[inst.goal[c - 1]].push_back(c);
  }
  std::vector<int> next(static_cast<std::size_t>(n), 0);
  for (int t = 1; t <= inst.types; ++t) {
    const auto& src = sources[t];
    const auto& dst = goals[t];
    std::vector<std::vector<double>> cost(src.size(), std::vector<double>(dst.size()));
    for (std::size_t i = 0; i < src.size(); ++i)
      for (std::size_t j = 0; j < dst.size(); ++j) cost[i][j] = distance(inst.dims, src[i], dst[j]);
    const auto match = min_cost_assignment(cost);
    for (std::size_t i = 0; i < src.size(); ++i) next[src[i] - 1] = dst[match.column_of_row[i]];
  }
  return next;
}

// Per type, a minimum-cost assignment (euclidean) of misplaced items to the
// goal cells lacking that type.
inline std::vector<MoveCycle> form_cycles_ptr(const Instance& inst) {
  detail::require_kind(inst, InstanceKind::typed);
  make_typed(inst.dims, inst.start, inst.goal, inst.types, inst.rest);
  return move_cycles(inst, form_cycles_ptr_next(inst));
}

// One forest merge over all cycles; edge weights are the exact added length
// of the cheapest same-type goal exchange between two cycles.
inline MergeResult merge_cycles_ptr(const Instance& inst, const std::vector<MoveCycle>& cycles) {
  return merge_along_forest(inst, successor_map(inst.size(), cycles), Metric::euclidean);
}

// Nests cycles under a minimum arborescence of nearest-vertex distances: a
// child entered at w from parent cell u is run right after the parent's
// item at u is picked up.
inline Plan sweep_cycles_ptr(const LatticeDims& dims, const std::vector<MoveCycle>& cycles, int rest,
                             const CostModel& model = {}, double* arborescence_weight = nullptr) {
  std::vector<std::vector<int>> cells;
  cells.reserve(cycles.size());
  for (const auto& c : cycles) cells.push_back(c.cells());
  return detail::nest_by_arborescence(dims, std::move(cells), rest, model.metric, detail::ArcRule::nearest_vertex,
                                      arborescence_weight)
      .run();
}

inline Plan plan_ptr(const Instance& inst, const CostModel& model = {}) {
  validate(model);
  const auto formed = form_cycles_ptr(inst);
  const auto merged = merge_cycles_ptr(inst, formed);
  return sweep_cycles_ptr(inst.dims, merged.cycles, inst.rest, model);
}

// Best-first baseline on any lattice, labeled or typed.
inline Plan greedy_2d(const Instance& inst, const CostModel& model = {}) { return greedy_plan(inst, model); }

// Cycle edge lengths summed and divided by n * max(m1, m2). Tends to the mean
// distance of two random points in a unit square for uniform labeled
// instances on square lattices. Typed instances use the assignment cycles.
inline double cycle_distance_statistic(const Instance& inst) {
  double sum = 0.0;
  if (inst.labeled()) {
    for (int c = 1; c <= inst.size(); ++c) sum += distance(inst.dims, c, inst.start[c - 1]);
  } else {
    const auto next = form_cycles_ptr_next(inst);
    for (int c = 1; c <= inst.size(); ++c)
      if (next[c - 1] != 0) sum += distance(inst.dims, c, next[c - 1]);
  }
  return sum / (static_cast<double>(inst.size()) * std::max(inst.dims.m1, inst.dims.m2));
}

}  // namespace lattice_rearrange
