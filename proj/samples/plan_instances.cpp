// Plans a few instances with every applicable planner and prints the costs.
//
//   ./sample_plan

#include <cstdio>

#include "lattice_rearrange.hpp"

using namespace lattice_rearrange;

namespace {

void report(const char* name, const Instance& inst, const Plan& plan) {
  const auto c = validate_plan(inst, plan);
  std::printf("  %-12s picks=%-4d travel=%9.3f\n", name, c.picks, c.travel);
}

}  // namespace

int main() {
  const auto line = make_labeled({3, 2, 4, 1, 7, 6, 9, 5, 8});
  std::printf("1D labeled, 9 items\n");
  report("sweep-lor", line, sweep_cycles_lor(line));
  report("opt-lor", line, opt_plan_lor(line));
  std::printf("  oracle       picks=%-4d travel=%9.3f\n", oracle_min_picks(line), oracle_optimal(line).cost.travel);

  const auto typed = gen_typed({40, 1}, 3, balanced_counts(40, 3), GoalPattern::aggregated(), 1).instance;
  std::printf("1D typed, 40 items, 3 types\n");
  report("greedy-por", typed, greedy_por(typed));
  report("opt-por", typed, opt_plan_por(typed));

  const auto grid = gen_uniform_2d(12, 12, 2);
  std::printf("2D labeled, 12x12\n");
  report("greedy-2d", grid, greedy_2d(grid));
  report("sweep-ltr", grid, sweep_cycles_ltr(grid));
  report("switch-ltr", grid, switch_cycles_ltr(grid));

  const auto blocks = gen_typed({16, 16}, 4, {}, GoalPattern::pattern_a(), 3).instance;
  std::printf("2D typed, 16x16, pattern A with 4 types\n");
  report("greedy-2d", blocks, greedy_2d(blocks));
  report("plan-ptr", blocks, plan_ptr(blocks));
  return 0;
}
