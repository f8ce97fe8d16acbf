#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "lattice_rearrange/gen.hpp"
#include "lattice_rearrange/lor.hpp"
#include "lattice_rearrange/oracle.hpp"

using namespace lattice_rearrange;

namespace {

const std::vector<int> nine{3, 2, 4, 1, 7, 6, 9, 5, 8};

int misplaced_plus_cycles(const std::vector<int>& pi) {
  int misplaced = 0;
  for (std::size_t i = 0; i < pi.size(); ++i) misplaced += pi[i] != static_cast<int>(i) + 1;
  return misplaced + static_cast<int>(permutation_cycles(pi).cycles.size());
}

}  // namespace

TEST(SweepLor, Examples) {
  EXPECT_TRUE(sweep_cycles_lor(make_labeled({1, 2, 3, 4})).empty());
  const auto inst = make_labeled(nine);
  EXPECT_EQ(validate_plan(inst, sweep_cycles_lor(inst)).picks, 9);

  // (1 2)(3 4): 1->2->1, then 1->3->4->3, then back to 1.
  const auto pairs = make_labeled({2, 1, 4, 3});
  const auto c = validate_plan(pairs, sweep_cycles_lor(pairs));
  EXPECT_EQ(c.picks, 6);
  EXPECT_DOUBLE_EQ(c.travel, 8.0);
}

TEST(SweepLor, Rejects2D) {
  EXPECT_THROW(sweep_cycles_lor(make_labeled(LatticeDims{2, 2}, {2, 1, 3, 4})), rearrange_error);
}

TEST(GroupCycles, Examples) {
  const auto g = group_cycles(permutation_cycles(nine));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].lo, 1);
  EXPECT_EQ(g[0].hi, 4);
  EXPECT_EQ(g[1].lo, 5);
  EXPECT_EQ(g[1].hi, 9);

  const auto overlap = group_cycles(std::vector<Cycle>{{1, 4}, {2, 6}});
  ASSERT_EQ(overlap.size(), 1u);
  EXPECT_EQ(overlap[0].cycles.size(), 2u);
  EXPECT_EQ(overlap[0].hi, 6);

  EXPECT_EQ(group_cycles(std::vector<Cycle>{{3, 5}}).size(), 1u);
}

TEST(GroupCycles, MatchesPairwiseUnionFixedPoint) {
  std::mt19937 rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto inst = gen_uniform_permutation(2 + rng() % 20, rng());
    const auto cycles = permutation_cycles(inst.start).cycles;
    // naive: merge any two overlapping ranges until nothing changes
    std::vector<std::pair<int, int>> ranges;
    for (const auto& c : cycles) ranges.push_back({cycle_min(c), cycle_max(c)});
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < ranges.size() && !changed; ++i)
        for (std::size_t j = i + 1; j < ranges.size() && !changed; ++j)
          if (std::max(ranges[i].first, ranges[j].first) <= std::min(ranges[i].second, ranges[j].second)) {
            ranges[i] = {std::min(ranges[i].first, ranges[j].first), std::max(ranges[i].second, ranges[j].second)};
            ranges.erase(ranges.begin() + j);
            changed = true;
          }
    }
    std::sort(ranges.begin(), ranges.end());
    const auto groups = group_cycles(cycles);
    ASSERT_EQ(groups.size(), ranges.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
      EXPECT_EQ(groups[i].lo, ranges[i].first);
      EXPECT_EQ(groups[i].hi, ranges[i].second);
    }
  }
}

TEST(OptLor, Examples) {
  EXPECT_TRUE(opt_plan_lor(make_labeled({1, 2, 3})).empty());
  const auto inst = make_labeled(nine);
  const auto opt = validate_plan(inst, opt_plan_lor(inst));
  const auto sweep = validate_plan(inst, sweep_cycles_lor(inst));
  EXPECT_EQ(opt.picks, 9);
  EXPECT_LE(opt.travel, sweep.travel + travel_tolerance);
}

TEST(OptLor, NestedCycleIsParked) {
  // (1 4)(2 3): carrying item 4 rightward from cell 1 passes cell 2, so the
  // inner cycle runs there with item 4 parked at cell 2.
  const auto inst = make_labeled({4, 3, 2, 1});
  const auto plan = opt_plan_lor(inst);
  ASSERT_EQ(plan.size(), 6u);
  EXPECT_EQ(plan.steps[0], (PlanStep{1, Action::pick}));
  EXPECT_EQ(plan.steps[1], (PlanStep{2, Action::swap}));
  const auto c = validate_plan(inst, plan);
  EXPECT_EQ(c.picks, 6);
  EXPECT_DOUBLE_EQ(c.travel, 8.0);
}

TEST(OptLor, PickFormulaAndDominance) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = gen_uniform_permutation(1 + static_cast<int>(seed % 60), seed);
    const auto opt = validate_plan(inst, opt_plan_lor(inst));
    const auto sweep = validate_plan(inst, sweep_cycles_lor(inst));
    EXPECT_EQ(opt.picks, misplaced_plus_cycles(inst.start));
    EXPECT_EQ(sweep.picks, opt.picks);
    EXPECT_EQ(labeled_min_picks(inst.start), opt.picks);
    EXPECT_LE(opt.travel, sweep.travel + travel_tolerance);
  }
}

TEST(OptLor, CarriedDistanceWithinGroups) {
  // Every item travels exactly |start - goal| while in hand, except the item
  // held across a hand-off to the next group (the one destined for a
  // group's rightmost cell).
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = gen_x_random(40, 8, seed);
    const auto r = simulate(inst, opt_plan_lor(inst));
    const auto groups = group_cycles(permutation_cycles(inst.start));
    std::set<int> handoff;
    for (std::size_t g = 0; g + 1 < groups.size(); ++g) handoff.insert(groups[g].hi);
    for (int cell = 1; cell <= inst.size(); ++cell) {
      const int label = inst.start[cell - 1];
      if (label == cell || handoff.count(label)) continue;
      EXPECT_DOUBLE_EQ(r.carried[label], std::abs(cell - label)) << "label " << label << " seed " << seed;
    }
  }
}

TEST(OptLor, MatchesOracleExhaustivelyUpToFive) {
  for (int m = 1; m <= 5; ++m) {
    std::vector<int> pi(m);
    std::iota(pi.begin(), pi.end(), 1);
    do {
      const auto inst = make_labeled(pi);
      const auto c = validate_plan(inst, opt_plan_lor(inst));
      const auto o = oracle_optimal(inst).cost;
      EXPECT_EQ(c.picks, o.picks);
      EXPECT_NEAR(c.travel, o.travel, travel_tolerance);
    } while (std::next_permutation(pi.begin(), pi.end()));
  }
}

TEST(OptLor, RestOverride) {
  const auto inst = make_labeled(LatticeDims{4, 1}, {2, 1, 4, 3}, 4);
  const auto c = validate_plan(inst, opt_plan_lor(inst));
  EXPECT_EQ(c.picks, 6);
  EXPECT_GE(c.travel, 6.0);
}

TEST(OptLor, HarmonicCycleCount) {
  const int m = 200;
  const int trials = 400;
  double cycles = 0;
  for (int t = 0; t < trials; ++t) {
    const auto set = permutation_cycles(gen_uniform_permutation(m, 1000 + t).start);
    cycles += set.cycles.size() + set.fixed_points.size();
  }
  double h = 0;
  for (int i = 1; i <= m; ++i) h += 1.0 / i;
  EXPECT_NEAR(cycles / trials, h, 0.1 * h);
}
