#pragma once

// Move cycles for typed instances and the goal-swap merge primitive shared
// by the 1D and 2D typed planners.
//
// A set of disjoint move cycles is kept as a successor map: next[c - 1] is
// the cell that receives the item currently at c (0 when the item stays).
// Exchanging the destinations of two same-type items that sit in different
// cycles merges those cycles into one without changing the moved items.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "core.hpp"
#include "graphs.hpp"

namespace lattice_rearrange {

struct MoveEdge {
  int src = 0;
  int dst = 0;
  friend bool operator==(const MoveEdge&, const MoveEdge&) = default;
};

struct MoveCycle {
  std::vector<MoveEdge> edges;  // dst of edge j is src of edge j + 1, cyclically
  std::vector<int> types;       // sorted ids of the item types moved

  std::vector<int> cells() const {
    std::vector<int> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back(e.src);
    return out;
  }
  int min_cell() const {
    int lo = std::numeric_limits<int>::max();
    for (const auto& e : edges) lo = std::min(lo, e.src);
    return lo;
  }
  int max_cell() const {
    int hi = 0;
    for (const auto& e : edges) hi = std::max(hi, e.src);
    return hi;
  }
};

// One destination exchange performed while merging: the items at first_src
// and second_src (same type) trade goals first_goal <-> second_goal.
struct GoalSwap {
  int type = 0;
  int first_src = 0;
  int second_src = 0;
  int first_goal = 0;
  int second_goal = 0;
  double added = 0.0;  // change in total edge length
};

struct MergeResult {
  std::vector<MoveCycle> cycles;
  std::vector<GoalSwap> swaps;
  double added_distance = 0.0;
};

inline std::vector<MoveCycle> move_cycles(const Instance& inst, std::span<const int> next) {
  std::vector<MoveCycle> out;
  for (auto& cells : successor_cycles(next).cycles) {
    MoveCycle c;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      c.edges.push_back({cells[j], cells[(j + 1) % cells.size()]});
      c.types.push_back(inst.start[cells[j] - 1]);
    }
    std::sort(c.types.begin(), c.types.end());
    c.types.erase(std::unique(c.types.begin(), c.types.end()), c.types.end());
    out.push_back(std::move(c));
  }
  return out;
}

inline std::vector<int> successor_map(int n, std::span<const MoveCycle> cycles) {
  std::vector<int> next(static_cast<std::size_t>(n), 0);
  for (const auto& c : cycles)
    for (const auto& e : c.edges) next[e.src - 1] = e.dst;
  return next;
}

inline double total_edge_length(const LatticeDims& dims, std::span<const MoveCycle> cycles,
                                Metric metric = Metric::euclidean) {
  double sum = 0.0;
  for (const auto& c : cycles)
    for (const auto& e : c.edges) sum += distance(dims, e.src, e.dst, metric);
  return sum;
}

// Change in total edge length when the items at a and c exchange goals.
inline double swap_delta(const LatticeDims& dims, std::span<const int> next, int a, int c, Metric metric) {
  const int b = next[a - 1];
  const int d = next[c - 1];
  return distance(dims, a, d, metric) + distance(dims, c, b, metric) - distance(dims, a, b, metric) -
         distance(dims, c, d, metric);
}

namespace detail {

// Cells grouped by the type of item they send, for items that move.
inline std::vector<std::vector<int>> moving_sources_by_type(const Instance& inst, std::span<const int> next) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(inst.types) + 1);
  for (int c = 1; c <= inst.size(); ++c)
    if (next[c - 1] != 0 && next[c - 1] != c) out[inst.start[c - 1]].push_back(c);
  return out;
}

// Cycle id of every moving cell (-1 for cells that stay).
inline std::vector<int> cycle_ids(std::span<const int> next) {
  std::vector<int> id(next.size(), -1);
  int count = 0;
  for (const auto& cyc : successor_cycles(next).cycles) {
    for (int c : cyc) id[c - 1] = count;
    ++count;
  }
  return id;
}

struct SwapCandidate {
  double delta = std::numeric_limits<double>::infinity();
  int a = 0;
  int c = 0;
};

inline bool better_candidate(double delta, int a, int c, const SwapCandidate& best) {
  if (best.a == 0 || delta < best.delta - 1e-12) return true;
  if (delta > best.delta + 1e-12) return false;
  return std::pair(std::min(a, c), std::max(a, c)) < std::pair(std::min(best.a, best.c), std::max(best.a, best.c));
}

// Cheapest same-type goal exchange between a cell of `left` and a cell of
// `right`.
inline SwapCandidate best_exchange(const Instance& inst, std::span<const int> next, Metric metric,
                                   std::span<const int> left, std::span<const int> right) {
  SwapCandidate best;
  for (int a : left)
    for (int c : right) {
      if (inst.start[a - 1] != inst.start[c - 1]) continue;
      const double delta = swap_delta(inst.dims, next, a, c, metric);
      if (better_candidate(delta, a, c, best)) best = {delta, a, c};
    }
  return best;
}

inline GoalSwap apply_exchange(const Instance& inst, std::vector<int>& next, int a, int c, double delta) {
  GoalSwap s{inst.start[a - 1], a, c, next[a - 1], next[c - 1], delta};
  std::swap(next[a - 1], next[c - 1]);
  return s;
}

}  // namespace detail

// Distance between two cycles: half the cheapest increase in total edge
// length over all exchanges of goals between same-type items, one from each.
// Infinite when the cycles share no type.
inline double cycle_distance(const Instance& inst, const MoveCycle& first, const MoveCycle& second,
                             Metric metric = Metric::euclidean) {
  std::vector<int> next(static_cast<std::size_t>(inst.size()), 0);
  std::vector<int> left, right;
  for (const auto& e : first.edges) {
    next[e.src - 1] = e.dst;
    left.push_back(e.src);
  }
  for (const auto& e : second.edges) {
    next[e.src - 1] = e.dst;
    right.push_back(e.src);
  }
  const auto best = detail::best_exchange(inst, next, metric, left, right);
  if (best.a == 0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, best.delta) / 2.0;
}

// Merges cycles through goal exchanges along a minimum spanning forest of
// the cycle graph weighted by cycle_distance. The exchange realizing each
// forest edge is re-evaluated on the current merged cycles when the edge is
// applied. With skip_costly_merges, a merge of two components whose cell
// ranges overlap is skipped when its added travel costs at least one pick.
struct ForestMergeOptions {
  bool skip_costly_merges = false;
  double pick_cost = 1.0;
  double travel_cost = 1.0;
};

inline MergeResult merge_along_forest(const Instance& inst, std::vector<int> next, Metric metric,
                                      const ForestMergeOptions& options = {}) {
  MergeResult result;
  const auto cycles = move_cycles(inst, next);
  const int count = static_cast<int>(cycles.size());
  const auto id = detail::cycle_ids(next);
  constexpr double inf = std::numeric_limits<double>::infinity();

  std::vector<detail::SwapCandidate> pair_best(static_cast<std::size_t>(count) * count);
  for (const auto& cells : detail::moving_sources_by_type(inst, next))
    for (std::size_t x = 0; x < cells.size(); ++x)
      for (std::size_t y = x + 1; y < cells.size(); ++y) {
        const int a = cells[x];
        const int c = cells[y];
        const int i = std::min(id[a - 1], id[c - 1]);
        const int j = std::max(id[a - 1], id[c - 1]);
        if (i == j) continue;
        const double delta = swap_delta(inst.dims, next, a, c, metric);
        auto& best = pair_best[static_cast<std::size_t>(i) * count + j];
        if (detail::better_candidate(delta, a, c, best)) best = {delta, a, c};
      }

  WeightedGraph graph;
  graph.vertex_count = count;
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) {
      const auto& best = pair_best[static_cast<std::size_t>(i) * count + j];
      if (best.delta < inf) graph.edges.push_back({i, j, std::max(0.0, best.delta) / 2.0});
    }
  const auto forest = mst_undirected(graph);

  std::vector<std::vector<int>> members(static_cast<std::size_t>(count));
  std::vector<int> lo(count), hi(count);
  for (int i = 0; i < count; ++i) {
    members[i] = cycles[i].cells();
    lo[i] = cycles[i].min_cell();
    hi[i] = cycles[i].max_cell();
  }
  detail::DisjointSets sets(count);
  for (std::size_t e : forest.edges) {
    const int i = sets.find(graph.edges[e].u);
    const int j = sets.find(graph.edges[e].v);
    const auto best = detail::best_exchange(inst, next, metric, members[i], members[j]);
    if (best.a == 0) continue;
    const bool overlap = std::max(lo[i], lo[j]) <= std::min(hi[i], hi[j]);
    if (options.skip_costly_merges && overlap && best.delta * options.travel_cost >= options.pick_cost)
      continue;
    const auto swap = detail::apply_exchange(inst, next, best.a, best.c, best.delta);
    result.added_distance += swap.added;
    result.swaps.push_back(swap);
    sets.unite(i, j);
    const int root = sets.find(i);
    const int other = root == i ? j : i;
    members[root].insert(members[root].end(), members[other].begin(), members[other].end());
    members[other].clear();
    lo[root] = std::min(lo[i], lo[j]);
    hi[root] = std::max(hi[i], hi[j]);
  }
  result.cycles = move_cycles(inst, next);
  return result;
}

}  // namespace lattice_rearrange
