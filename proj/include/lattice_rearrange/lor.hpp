#pragma once

// One-dimensional labeled rearrangement: plain cycle sweeping and the
// travel-optimal cycle grouping/switching planner.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "core.hpp"
#include "graphs.hpp"

namespace lattice_rearrange {

// Follows each cycle to completion, in the given order: pick at the first
// cell, swap along the orbit, place back at the first cell.
inline Plan follow_cycles(std::span<const Cycle> cycles) {
  Plan plan;
  for (const auto& c : cycles) {
    plan.pick(c.front());
    for (std::size_t j = 1; j < c.size(); ++j) plan.swap(c[j]);
    plan.place(c.front());
  }
  return plan;
}

inline void require_1d(const Instance& inst, InstanceKind kind) {
  if (!inst.dims.is_1d()) throw invalid_instance("planner requires a 1D lattice (m2 == 1)");
  if (inst.kind != kind)
    throw invalid_instance(kind == InstanceKind::labeled ? "planner requires a labeled instance"
                                                         : "planner requires a typed instance");
}

inline Plan sweep_cycles_lor(const Instance& inst) {
  require_1d(inst, InstanceKind::labeled);
  return follow_cycles(permutation_cycles(inst.start).cycles);
}

// Cycles whose [min, max] cell ranges chain-overlap.
struct CycleGroup {
  std::vector<Cycle> cycles;  // ordered by minimum cell
  int lo = 0;
  int hi = 0;
};

inline int cycle_min(const Cycle& c) { return *std::min_element(c.begin(), c.end()); }
inline int cycle_max(const Cycle& c) { return *std::max_element(c.begin(), c.end()); }

// Left-to-right interval sweep; reaches the same fixed point as repeated
// pairwise unions of overlapping ranges.
inline std::vector<CycleGroup> group_cycles(std::vector<Cycle> cycles) {
  for (auto& c : cycles) std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
  std::sort(cycles.begin(), cycles.end(), [](const Cycle& a, const Cycle& b) { return a.front() < b.front(); });
  std::vector<CycleGroup> groups;
  for (auto& c : cycles) {
    const int lo = c.front();
    const int hi = cycle_max(c);
    if (groups.empty() || lo > groups.back().hi) groups.push_back({{}, lo, hi});
    auto& g = groups.back();
    g.hi = std::max(g.hi, hi);
    g.cycles.push_back(std::move(c));
  }
  return groups;
}

inline std::vector<CycleGroup> group_cycles(const CycleSet& set) { return group_cycles(set.cycles); }

namespace detail {

// Group processing with cycle switching on a 1D successor map. While
// carrying item g toward cell g, every not-yet-started cycle of the current
// group whose minimum lies before g is processed first: the carried item is
// parked at that cycle's minimum cell and retrieved by the cycle's closing
// swap. Reaching the group's rightmost cell hands off to the next group the
// same way.
class GroupSwitcher {
public:
  GroupSwitcher(std::span<const int> next, std::vector<CycleGroup> groups)
      : next_(next), groups_(std::move(groups)), cursor_(groups_.size(), 1) {}

  Plan run() {
    if (!groups_.empty()) process_cycle(false, 0, 0);
    return std::move(plan_);
  }

private:
  void process_cycle(bool parked, std::size_t gi, std::size_t ci) {
    const auto& group = groups_[gi];
    const int i = group.cycles[ci].front();
    if (parked) plan_.swap(i);
    else plan_.pick(i);
    int g = next_[i - 1];
    while (g != i) {
      while (cursor_[gi] < group.cycles.size() && g > group.cycles[cursor_[gi]].front())
        process_cycle(true, gi, cursor_[gi]++);
      if (g == group.hi && gi + 1 < groups_.size()) process_cycle(true, gi + 1, 0);
      plan_.swap(g);
      g = next_[g - 1];
    }
    if (parked) plan_.swap(i);
    else plan_.place(i);
  }

  std::span<const int> next_;
  std::vector<CycleGroup> groups_;
  std::vector<std::size_t> cursor_;
  Plan plan_;
};

}  // namespace detail

// Plan for an arbitrary set of disjoint 1D cycles given by a successor map
// (next[c - 1] = destination of the item at c, 0 or c when it stays).
inline Plan group_switch_cycles(std::span<const int> next) {
  return detail::GroupSwitcher(next, group_cycles(successor_cycles(next))).run();
}

// Minimum picks and, among those, minimum end-effector travel.
inline Plan opt_plan_lor(const Instance& inst) {
  require_1d(inst, InstanceKind::labeled);
  if (!is_permutation_of_cells(inst.start))
    throw rearrange_error("MalformedPermutation", "pi is not a permutation of 1..n");
  return group_switch_cycles(inst.start);
}

// Minimum pick count of a labeled instance: misplaced items plus one extra
// pick per nontrivial cycle.
inline int labeled_min_picks(std::span<const int> pi) {
  const auto set = permutation_cycles(pi);
  int moved = 0;
  for (const auto& c : set.cycles) moved += static_cast<int>(c.size());
  return moved + static_cast<int>(set.cycles.size());
}

}  // namespace lattice_rearrange
