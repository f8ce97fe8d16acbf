#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "lattice_rearrange/gen.hpp"
#include "lattice_rearrange/oracle.hpp"

using namespace lattice_rearrange;

namespace {

Instance relabel_types(const Instance& inst, const std::vector<int>& map) {
  auto start = inst.start, goal = inst.goal;
  for (auto& t : start) t = map[t - 1];
  for (auto& t : goal) t = map[t - 1];
  return make_typed(inst.dims, start, goal, inst.types, inst.rest);
}

// Mirror a 1D labeled instance: cell c becomes m + 1 - c. The rest cell
// moves to the other end, so it is mirrored too.
Instance mirrored(const Instance& inst) {
  const int m = inst.size();
  std::vector<int> pi(m);
  for (int c = 1; c <= m; ++c) pi[m - c] = m + 1 - inst.start[c - 1];
  return make_labeled(inst.dims, pi, m + 1 - inst.rest);
}

}  // namespace

TEST(Oracle, Examples) {
  const auto id = oracle_optimal(make_labeled({1, 2, 3}));
  EXPECT_EQ(id.cost.picks, 0);
  EXPECT_TRUE(id.plan.empty());

  const auto pair = oracle_optimal(make_labeled({2, 1}));
  EXPECT_EQ(pair.cost.picks, 3);
  EXPECT_DOUBLE_EQ(pair.cost.travel, 2.0);
  EXPECT_EQ(validate_plan(make_labeled({2, 1}), pair.plan).picks, 3);

  const auto typed = oracle_optimal(make_typed({2, 1}, {1, 2}));
  EXPECT_EQ(typed.cost.picks, 3);

  const auto first = make_labeled({3, 2, 4, 1});
  const auto r = oracle_optimal(first);
  EXPECT_EQ(r.cost.picks, 4);
  EXPECT_DOUBLE_EQ(r.cost.travel, 6.0);
}

TEST(Oracle, MinPicksClosedForm) {
  EXPECT_EQ(oracle_min_picks(make_labeled({1, 2, 3})), 0);
  EXPECT_EQ(oracle_min_picks(make_labeled({3, 2, 4, 1, 7, 6, 9, 5, 8})), 9);
  EXPECT_EQ(oracle_min_picks(make_typed({2, 1}, {1, 2})), 3);
  // types 1<->2 and 3<->4 never interact: two cycles
  EXPECT_EQ(oracle_min_picks(make_typed({2, 1, 4, 3}, {1, 2, 3, 4})), 6);
  // types chained 1-2-3: one cycle after merging
  EXPECT_EQ(oracle_min_picks(make_typed({2, 1, 3, 2}, {1, 2, 2, 3})), 5);
}

TEST(Oracle, SearchAgreesWithClosedForm) {
  std::mt19937 rng(61);
  for (int t = 0; t < 150; ++t) {
    const int n = 2 + rng() % 5;
    Instance inst;
    if (t % 2) {
      inst = gen_uniform_permutation(n, rng());
    } else {
      const int k = 2 + rng() % 2;
      std::vector<int> goal(n);
      for (auto& g : goal) g = 1 + rng() % k;
      auto start = goal;
      std::shuffle(start.begin(), start.end(), rng);
      inst = make_typed(start, goal, k);
    }
    const auto r = oracle_optimal(inst);
    EXPECT_EQ(r.cost.picks, oracle_min_picks(inst));
    const auto c = validate_plan(inst, r.plan);
    EXPECT_EQ(c.picks, r.cost.picks);
    EXPECT_NEAR(c.travel, r.cost.travel, travel_tolerance);
  }
}

TEST(Oracle, TypeRelabelingInvariance) {
  std::mt19937 rng(67);
  for (int t = 0; t < 60; ++t) {
    const LatticeDims dims = t % 2 ? LatticeDims{6, 1} : LatticeDims{2, 3};
    std::vector<int> goal(6);
    for (auto& g : goal) g = 1 + rng() % 3;
    auto start = goal;
    std::shuffle(start.begin(), start.end(), rng);
    const auto inst = make_typed(dims, start, goal, 3);
    std::vector<int> map{1, 2, 3};
    std::shuffle(map.begin(), map.end(), rng);
    const auto a = oracle_optimal(inst).cost;
    const auto b = oracle_optimal(relabel_types(inst, map)).cost;
    EXPECT_EQ(a.picks, b.picks);
    EXPECT_NEAR(a.travel, b.travel, travel_tolerance);
  }
}

TEST(Oracle, MirrorAndReverseInvariance) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = gen_uniform_permutation(5, seed);
    const auto a = oracle_optimal(inst).cost;
    const auto b = oracle_optimal(mirrored(make_labeled(inst.dims, inst.start, inst.size()))).cost;
    const auto c = oracle_optimal(reversed_instance(inst)).cost;
    EXPECT_EQ(a.picks, b.picks);
    EXPECT_EQ(a.picks, c.picks);
    EXPECT_NEAR(a.travel, c.travel, travel_tolerance);
    // mirroring moves the rest cell to the right end; the rest-at-right
    // instance mirrors back to the original
    const auto d = oracle_optimal(make_labeled(inst.dims, inst.start, inst.size())).cost;
    EXPECT_NEAR(d.travel, b.travel, travel_tolerance);
  }
}

TEST(Oracle, WeightedObjective) {
  // Cost c_p = 100 makes picks dominate: same optimum as lexicographic.
  const CostModel heavy{100.0, 1.0, Metric::euclidean};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = gen_uniform_permutation(5, seed);
    const auto lex = oracle_optimal(inst, heavy);
    const auto w = oracle_optimal(inst, heavy, Objective::weighted_total);
    EXPECT_EQ(w.cost.picks, lex.cost.picks);
    EXPECT_NEAR(w.total, lex.total, 1e-6);
  }
  // A cheap pick can trade extra picks for travel; the weighted optimum is
  // never worse in total and never fewer picks than the minimum.
  const CostModel cheap{0.01, 1.0, Metric::euclidean};
  std::mt19937 rng(71);
  for (int t = 0; t < 40; ++t) {
    std::vector<int> goal(6);
    for (auto& g : goal) g = 1 + rng() % 2;
    auto start = goal;
    std::shuffle(start.begin(), start.end(), rng);
    const auto inst = make_typed(start, goal, 2);
    const auto lex = oracle_optimal(inst, cheap);
    const auto w = oracle_optimal(inst, cheap, Objective::weighted_total);
    EXPECT_LE(w.total, lex.total + 1e-6);
    EXPECT_GE(w.cost.picks, lex.cost.picks);
    EXPECT_NEAR(simulate(inst, w.plan, cheap).cost.total, w.total, 1e-6);
  }
}

TEST(Oracle, RefusesLargeInstances) {
  try {
    oracle_optimal(gen_uniform_permutation(15, 1));
    FAIL();
  } catch (const rearrange_error& e) {
    EXPECT_EQ(e.code(), "TooLarge");
  }
  EXPECT_THROW(oracle_optimal(gen_uniform_permutation(8, 1), {}, Objective::lexicographic, 100.0), rearrange_error);
}

TEST(Oracle, Deterministic) {
  const auto inst = gen_uniform_permutation(6, 5);
  EXPECT_EQ(oracle_optimal(inst).plan, oracle_optimal(inst).plan);
}
