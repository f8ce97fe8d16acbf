#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "lattice_rearrange/gen.hpp"
#include "lattice_rearrange/oracle.hpp"
#include "lattice_rearrange/por.hpp"

using namespace lattice_rearrange;

namespace {

double edge_sum(const Instance& inst, const std::vector<MoveCycle>& cycles) {
  return total_edge_length(inst.dims, cycles);
}

// Minimum total |src - dst| over all per-type assignments.
double brute_matching(const Instance& inst) {
  double total = 0;
  for (int t = 1; t <= inst.types; ++t) {
    std::vector<int> src, dst;
    for (int c = 1; c <= inst.size(); ++c) {
      if (inst.start[c - 1] == inst.goal[c - 1]) continue;
      if (inst.start[c - 1] == t) src.push_back(c);
      if (inst.goal[c - 1] == t) dst.push_back(c);
    }
    double best = std::numeric_limits<double>::infinity();
    std::sort(dst.begin(), dst.end());
    do {
      double s = 0;
      for (std::size_t i = 0; i < src.size(); ++i) s += std::abs(src[i] - dst[i]);
      best = std::min(best, s);
    } while (std::next_permutation(dst.begin(), dst.end()));
    total += src.empty() ? 0 : best;
  }
  return total;
}

// Smallest total added edge length over every sequence of goal exchanges
// between different cycles that ends with no mergeable pair left.
double brute_merge(const Instance& inst, std::vector<int> next) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::vector<int>&, double)> rec = [&](std::vector<int>& nx, double added) {
    if (added >= best) return;
    std::vector<int> id(nx.size(), -1);
    int k = 0;
    for (const auto& c : successor_cycles(nx).cycles) {
      for (int x : c) id[x - 1] = k;
      ++k;
    }
    bool any = false;
    for (int a = 1; a <= inst.size(); ++a)
      for (int c = a + 1; c <= inst.size(); ++c) {
        if (id[a - 1] < 0 || id[c - 1] < 0 || id[a - 1] == id[c - 1]) continue;
        if (inst.start[a - 1] != inst.start[c - 1]) continue;
        any = true;
        const double d = swap_delta(inst.dims, nx, a, c, Metric::euclidean);
        std::swap(nx[a - 1], nx[c - 1]);
        rec(nx, added + d);
        std::swap(nx[a - 1], nx[c - 1]);
      }
    if (!any) best = std::min(best, added);
  };
  rec(next, 0.0);
  return best;
}

}  // namespace

TEST(FormCycles, Examples) {
  EXPECT_TRUE(form_cycles(make_typed({1, 2, 1}, {1, 2, 1})).empty());

  const auto pair = form_cycles(make_typed({2, 1}, {1, 2}));
  ASSERT_EQ(pair.size(), 1u);
  EXPECT_EQ(pair[0].edges, (std::vector<MoveEdge>{{1, 2}, {2, 1}}));
  EXPECT_EQ(pair[0].types, (std::vector<int>{1, 2}));

  const auto inst = make_typed({2, 1, 3, 1, 2, 3}, {1, 1, 2, 2, 3, 3});
  EXPECT_DOUBLE_EQ(edge_sum(inst, form_cycles(inst)), brute_matching(inst));
}

TEST(FormCycles, DistanceOptimalAndTypeConsistent) {
  std::mt19937 rng(3);
  for (int t = 0; t < 300; ++t) {
    const int m = 2 + rng() % 9;
    const int k = 2 + rng() % 3;
    std::vector<int> goal(m);
    for (auto& g : goal) g = 1 + rng() % k;
    auto start = goal;
    std::shuffle(start.begin(), start.end(), rng);
    const auto inst = make_typed(LatticeDims{m, 1}, start, goal, k);
    const auto cycles = form_cycles(inst);
    EXPECT_DOUBLE_EQ(edge_sum(inst, cycles), brute_matching(inst));
    for (const auto& c : cycles)
      for (std::size_t j = 0; j < c.edges.size(); ++j) {
        EXPECT_EQ(c.edges[j].dst, c.edges[(j + 1) % c.edges.size()].src);
        EXPECT_EQ(inst.start[c.edges[j].src - 1], inst.goal[c.edges[j].dst - 1]);
      }
  }
}

TEST(FormCycles, RejectsBadInput) {
  EXPECT_THROW(form_cycles(make_labeled({2, 1})), rearrange_error);
  Instance bad = make_typed({1, 2}, {2, 1});
  bad.goal = {1, 1};
  try {
    form_cycles(bad);
    FAIL();
  } catch (const rearrange_error& e) {
    EXPECT_EQ(e.code(), "TypeMismatch");
  }
}

TEST(MergeCycles, SameDirectionMergeIsFree) {
  // (1 3)(2 4): both type-2 items move right, into overlapping spans.
  const auto inst = make_typed({2, 2, 1, 1}, {1, 1, 2, 2});
  const auto formed = form_cycles(inst);
  ASSERT_EQ(formed.size(), 2u);
  const auto merged = merge_cycles(inst, formed);
  EXPECT_EQ(merged.size(), 1u);
  EXPECT_DOUBLE_EQ(edge_sum(inst, merged), edge_sum(inst, formed));

  const auto single = form_cycles(make_typed({2, 1}, {1, 2}));
  EXPECT_EQ(merge_cycles(make_typed({2, 1}, {1, 2}), single).size(), 1u);
}

TEST(MergeCycles, AggregatedBoundAndConservation) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int m = 12 + static_cast<int>(seed % 30);
    const auto inst = gen_typed({m, 1}, 4, balanced_counts(m, 4), GoalPattern::aggregated(), seed).instance;
    const auto formed = form_cycles(inst);
    const auto merged = merge_cycles(inst, formed);
    EXPECT_LE(merged.size(), 3u);
    EXPECT_DOUBLE_EQ(edge_sum(inst, merged), edge_sum(inst, formed));
  }
}

TEST(CycleDistance, Examples) {
  const auto far = make_typed({2, 1, 4, 3}, {1, 2, 3, 4});
  const auto cf = form_cycles(far);
  ASSERT_EQ(cf.size(), 2u);
  EXPECT_EQ(cycle_distance(far, cf[0], cf[1]), std::numeric_limits<double>::infinity());

  // type 3 moves 1 -> 2 in one cycle and 4 -> 3 in the other: gap 1.
  const auto inst = make_typed({3, 1, 2, 3}, {1, 3, 3, 2});
  const auto cycles = form_cycles(inst);
  ASSERT_EQ(cycles.size(), 2u);
  EXPECT_DOUBLE_EQ(cycle_distance(inst, cycles[0], cycles[1]), 1.0);
  const auto r = merge_cycles_mst(inst, merge_cycles(inst, cycles));
  EXPECT_EQ(r.cycles.size(), 1u);
  EXPECT_DOUBLE_EQ(r.added_distance, 2.0);

  // overlapping same-direction moves: the exchange costs nothing
  const auto touch = make_typed({2, 2, 1, 1}, {1, 1, 2, 2});
  const auto tc = form_cycles(touch);
  EXPECT_DOUBLE_EQ(cycle_distance(touch, tc[0], tc[1]), 0.0);
}

TEST(MergeCyclesMst, ThreeChainedCycles) {
  // cycles (1 2), (3 4), (5 6) with type 3 moving 1->2, 4->3, 6->5:
  // distances 1 (first-second), 1 (second-third), 3 (first-third).
  const auto inst = make_typed({3, 1, 2, 3, 4, 3}, {1, 3, 3, 2, 3, 4});
  const auto cycles = merge_cycles(inst, form_cycles(inst));
  ASSERT_EQ(cycles.size(), 3u);
  EXPECT_DOUBLE_EQ(cycle_distance(inst, cycles[0], cycles[1]), 1.0);
  EXPECT_DOUBLE_EQ(cycle_distance(inst, cycles[1], cycles[2]), 1.0);
  EXPECT_DOUBLE_EQ(cycle_distance(inst, cycles[0], cycles[2]), 3.0);
  const auto r = merge_cycles_mst(inst, cycles);
  EXPECT_EQ(r.cycles.size(), 1u);
  EXPECT_DOUBLE_EQ(r.added_distance, 4.0);
  EXPECT_EQ(r.swaps.size(), 2u);
}

TEST(MergeCyclesMst, UnmergeableUnchanged) {
  const auto inst = make_typed({2, 1, 4, 3}, {1, 2, 3, 4});
  const auto cycles = form_cycles(inst);
  const auto r = merge_cycles_mst(inst, cycles);
  EXPECT_EQ(r.cycles.size(), 2u);
  EXPECT_EQ(r.added_distance, 0.0);
}

TEST(MergeCyclesMst, MatchesExhaustiveMergeSearch) {
  std::mt19937 rng(8);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 150; ++t) {
    const int m = 4 + rng() % 7;
    const int k = 2 + rng() % 3;
    std::vector<int> goal(m);
    for (auto& g : goal) g = 1 + rng() % k;
    auto start = goal;
    std::shuffle(start.begin(), start.end(), rng);
    const auto inst = make_typed(LatticeDims{m, 1}, start, goal, k);
    const auto merged = merge_cycles(inst, form_cycles(inst));
    if (merged.size() < 2 || merged.size() > 5) continue;
    ++checked;
    const auto r = merge_cycles_mst(inst, merged);
    EXPECT_NEAR(r.added_distance, brute_merge(inst, successor_map(m, merged)), 1e-9);
    EXPECT_NEAR(edge_sum(inst, r.cycles), edge_sum(inst, merged) + r.added_distance, 1e-9);
  }
  EXPECT_GT(checked, 20);
}

TEST(OptPor, Examples) {
  const auto solved = make_typed({1, 2, 2}, {1, 2, 2});
  EXPECT_TRUE(opt_plan_por(solved).empty());
  const auto pair = make_typed({2, 1}, {1, 2});
  const auto c = validate_plan(pair, opt_plan_por(pair));
  EXPECT_EQ(c.picks, 3);
  EXPECT_DOUBLE_EQ(c.travel, 2.0);
}

TEST(OptPor, MatchesOracleOnSmallInstances) {
  std::mt19937 rng(12);
  for (int t = 0; t < 150; ++t) {
    const int m = 2 + rng() % 5;
    const int k = std::min(m, 2 + static_cast<int>(rng() % 2));
    std::vector<int> goal(m);
    if (t % 2 == 0) {
      goal = layout_goal({m, 1}, k, balanced_counts(m, k), GoalPattern::aggregated()).goal;
    } else {
      for (auto& g : goal) g = 1 + rng() % k;
    }
    auto start = goal;
    std::shuffle(start.begin(), start.end(), rng);
    const auto inst = make_typed(LatticeDims{m, 1}, start, goal, k);
    const auto c = validate_plan(inst, opt_plan_por(inst));
    const auto o = oracle_optimal(inst).cost;
    EXPECT_EQ(c.picks, o.picks);
    EXPECT_NEAR(c.travel, o.travel, travel_tolerance);
    EXPECT_EQ(c.picks, oracle_min_picks(inst));
  }
}

TEST(OptPor, SkipCostlyMerges) {
  // A small cycle nested inside a wider one; merging them costs travel 2.
  const auto inst = make_typed({3, 2, 4, 3, 1}, {1, 3, 3, 4, 2});
  const CostModel cheap_pick{1.0, 1.0, Metric::euclidean};
  const auto merged = validate_plan(inst, opt_plan_por(inst, cheap_pick), cheap_pick);
  const auto skipped = validate_plan(inst, opt_plan_por(inst, cheap_pick, {true}), cheap_pick);
  EXPECT_EQ(merged.picks, 6);
  EXPECT_EQ(skipped.picks, 7);
  EXPECT_LE(skipped.total, merged.total + 1e-9);

  const CostModel dear_pick{3.0, 1.0, Metric::euclidean};
  const auto kept = validate_plan(inst, opt_plan_por(inst, dear_pick, {true}), dear_pick);
  EXPECT_EQ(kept.picks, 6);
}

TEST(GreedyPor, ValidAndNeverFewerPicks) {
  EXPECT_TRUE(greedy_por(make_typed({1, 2}, {1, 2})).empty());
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int m = 5 + static_cast<int>(seed % 40);
    const int k = 2 + static_cast<int>(seed % 9);
    const auto inst = gen_typed({m, 1}, k, balanced_counts(m, k), GoalPattern::aggregated(), seed).instance;
    const auto g = validate_plan(inst, greedy_por(inst));
    const auto o = validate_plan(inst, opt_plan_por(inst));
    EXPECT_GE(g.picks, o.picks);
    EXPECT_TRUE(std::isfinite(g.travel));
  }
}
