#pragma once

// One-dimensional typed (partially labeled) rearrangement.
//
// Pipeline: form distance-optimal move cycles, merge cycles for free where
// same-type moves run the same way, merge the rest along a minimum spanning
// forest of exchange costs, then sweep the cycles with switching.

#include <algorithm>
#include <limits>
#include <vector>

#include "core.hpp"
#include "graphs.hpp"
#include "lor.hpp"
#include "move_cycles.hpp"

namespace lattice_rearrange {

// Per type, the k-th misplaced item from the left goes to the k-th goal cell
// (from the left) that still lacks its type. Sorted pairing minimizes the
// summed |src - dst| for each type.
inline std::vector<MoveCycle> form_cycles(const Instance& inst) {
  require_1d(inst, InstanceKind::typed);
  make_typed(inst.dims, inst.start, inst.goal, inst.types, inst.rest);
  const int n = inst.size();
  std::vector<std::vector<int>> sources(static_cast<std::size_t>(inst.types) + 1);
  std::vector<std::vector<int>> goals(static_cast<std::size_t>(inst.types) + 1);
  for (int c = 1; c <= n; ++c) {
    if (inst.start[c - 1] == inst.goal[c - 1]) continue;
    sources[inst.start[c - 1]].push_back(c);
    goals[inst.goal[c - 1]].push_back(c);
  }
  std::vector<int> next(static_cast<std::size_t>(n), 0);
  for (int t = 1; t <= inst.types; ++t)
    for (std::size_t j = 0; j < sources[t].size(); ++j) next[sources[t][j] - 1] = goals[t][j];
  return move_cycles(inst, next);
}

// Merges cycles whenever two same-type moves in different cycles can trade
// destinations at no change in total edge length. Repeats to a fixed point.
inline std::vector<MoveCycle> merge_cycles(const Instance& inst, const std::vector<MoveCycle>& cycles) {
  auto next = successor_map(inst.size(), cycles);
  const auto by_type = detail::moving_sources_by_type(inst, next);
  const auto id = detail::cycle_ids(next);
  detail::DisjointSets sets(static_cast<int>(cycles.size()));
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& cells : by_type)
      for (std::size_t x = 0; x < cells.size(); ++x)
        for (std::size_t y = x + 1; y < cells.size(); ++y) {
          const int a = cells[x];
          const int c = cells[y];
          if (sets.find(id[a - 1]) == sets.find(id[c - 1])) continue;
          if (swap_delta(inst.dims, next, a, c, Metric::euclidean) != 0.0) continue;
          std::swap(next[a - 1], next[c - 1]);
          sets.unite(id[a - 1], id[c - 1]);
          changed = true;
        }
  }
  return move_cycles(inst, next);
}

struct PorOptions {
  bool skip_costly_merges = false;
};

inline MergeResult merge_cycles_mst(const Instance& inst, const std::vector<MoveCycle>& cycles,
                                    const CostModel& model = {}, const PorOptions& options = {}) {
  return merge_along_forest(inst, successor_map(inst.size(), cycles), Metric::euclidean,
                            {options.skip_costly_merges, model.pick_cost, model.travel_cost});
}

inline Plan group_sweep_cycles_por(const Instance& inst, const std::vector<MoveCycle>& cycles) {
  return group_switch_cycles(successor_map(inst.size(), cycles));
}

inline Plan opt_plan_por(const Instance& inst, const CostModel& model = {}, const PorOptions& options = {}) {
  validate(model);
  const auto formed = form_cycles(inst);
  const auto merged = merge_cycles(inst, formed);
  const auto spanned = merge_cycles_mst(inst, merged, model, options);
  return group_sweep_cycles_por(inst, spanned.cycles);
}

// Best-first baseline for typed instances on any lattice. With an empty
// hand, pick the nearest misplaced item; while holding type x, go to the
// nearest cell whose goal is x and whose current item is not x, placing if it
// is the hole and swapping otherwise. Distance ties go to the smaller cell.
inline Plan greedy_plan(const Instance& inst, const CostModel& model = {}) {
  const int n = inst.size();
  auto config = inst.start;
  Plan plan;
  int pos = inst.rest;
  int held = 0;
  auto nearest = [&](auto&& accept) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c = 1; c <= n; ++c) {
      if (!accept(c)) continue;
      const double d = distance(inst.dims, pos, c, model);
      if (d < best_d - 1e-12) {
        best = c;
        best_d = d;
      }
    }
    return best;
  };
  for (;;) {
    if (held == 0) {
      const int c = nearest([&](int x) { return config[x - 1] != inst.goal[x - 1]; });
      if (c == 0) break;
      plan.pick(c);
      held = std::exchange(config[c - 1], 0);
      pos = c;
      continue;
    }
    const int c = nearest([&](int x) { return inst.goal[x - 1] == held && config[x - 1] != held; });
    if (config[c - 1] == 0) {
      plan.place(c);
      config[c - 1] = std::exchange(held, 0);
    } else {
      plan.swap(c);
      std::swap(config[c - 1], held);
    }
    pos = c;
  }
  return plan;
}

inline Plan greedy_por(const Instance& inst, const CostModel& model = {}) {
  require_1d(inst, InstanceKind::typed);
  return greedy_plan(inst, model);
}

}  // namespace lattice_rearrange
