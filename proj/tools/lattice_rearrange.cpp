// lattice_rearrange: generate, solve, validate, search and benchmark
// pick-n-swap rearrangement instances over JSON.
//
// Exit status: 0 success, 1 domain error (error JSON on stderr), 2 usage.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lattice_rearrange.hpp"

namespace lr = lattice_rearrange;

namespace {

const std::vector<std::string> solver_names{"sweep-lor", "opt-lor",   "opt-por",  "greedy-por",
                                            "sweep-ltr", "switch-ltr", "plan-ptr", "greedy-2d"};
const std::vector<std::string> distribution_names{"uniform", "x_random", "column", "block", "typed", "tsp"};

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lr::rearrange_error("IoError", "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lr::rearrange_error("IoError", "cannot open " + path + " for writing");
  out << text;
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value) {
  if (opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("LATTICE_REARRANGE_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw lr::rearrange_error("InvalidSeed", "LATTICE_REARRANGE_SEED is not an unsigned integer");
  }
  return 0;
}

lr::Metric parse_metric(const std::string& name) {
  return name == "manhattan" ? lr::Metric::manhattan : lr::Metric::euclidean;
}

lr::Plan run_solver(const std::string& solver, const lr::Instance& inst, const lr::CostModel& model,
                    bool skip_costly) {
  if (solver == "sweep-lor") return lr::sweep_cycles_lor(inst);
  if (solver == "opt-lor") return lr::opt_plan_lor(inst);
  if (solver == "opt-por") return lr::opt_plan_por(inst, model, {skip_costly});
  if (solver == "greedy-por") return lr::greedy_por(inst, model);
  if (solver == "sweep-ltr") return lr::sweep_cycles_ltr(inst, model);
  if (solver == "switch-ltr") return lr::switch_cycles_ltr(inst, model);
  if (solver == "plan-ptr") return lr::plan_ptr(inst, model);
  return lr::greedy_2d(inst, model);
}

std::vector<lr::LatticePoint> parse_points(const std::string& text) {
  std::vector<lr::LatticePoint> points;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw lr::rearrange_error("InvalidPoints", "points must look like r,c;r,c");
    try {
      points.push_back({std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1))});
    } catch (const std::exception&) {
      throw lr::rearrange_error("InvalidPoints", "points must look like r,c;r,c");
    }
  }
  return points;
}

std::string cost_summary(const lr::PlanCost& c) {
  std::ostringstream os;
  os.precision(12);
  os << "picks=" << c.picks << " travel=" << c.travel << " total=" << c.total;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pick-n-swap rearrangement planning on 1D and 2D lattices"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
  std::string distribution;
  int g_m = 0, g_m1 = 0, g_m2 = 0, g_k = 2, g_x = 10;
  std::string pattern = "aggregated", counts_text, points_text, gen_out;
  std::uint64_t gen_seed = 0;
  gen->add_option("distribution", distribution, "uniform | x_random | column | block | typed | tsp")
      ->required()
      ->check(CLI::IsMember(distribution_names));
  gen->add_option("--m", g_m, "1D length, or side of an m x m lattice for block");
  gen->add_option("--m1", g_m1, "rows");
  gen->add_option("--m2", g_m2, "columns");
  gen->add_option("--k", g_k, "number of types (typed)");
  gen->add_option("--x", g_x, "block length (x_random)");
  gen->add_option("--pattern", pattern, "typed goal: aggregated | a | b")
      ->check(CLI::IsMember({"aggregated", "a", "b"}));
  gen->add_option("--counts", counts_text, "comma-separated per-type counts (aggregated)");
  gen->add_option("--points", points_text, "tsp cluster points as r,c;r,c;...");
  auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "seed (falls back to LATTICE_REARRANGE_SEED)");
  gen->add_option("-o,--output", gen_out, "output path (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Plan an instance");
  std::string solver = "opt-lor", metric = "euclidean", solve_in, solve_out;
  double cp = 1.0, ct = 1.0;
  bool skip_costly = false;
  solve->add_option("--solver", solver, "sweep-lor | opt-lor | opt-por | greedy-por | sweep-ltr | switch-ltr | "
                                        "plan-ptr | greedy-2d")
      ->check(CLI::IsMember(solver_names));
  solve->add_option("--cp", cp, "pick cost");
  solve->add_option("--ct", ct, "unit travel cost");
  solve->add_option("--metric", metric, "euclidean | manhattan")->check(CLI::IsMember({"euclidean", "manhattan"}));
  solve->add_flag("--skip-costly-merges", skip_costly, "opt-por: skip overlapping merges costing a pick or more");
  solve->add_option("instance", solve_in, "instance JSON path (default stdin)");
  solve->add_option("-o,--output", solve_out, "plan output path (default stdout)");

  // validate
  auto* val = app.add_subcommand("validate", "Simulate a plan against an instance");
  std::string val_inst, val_plan, val_metric = "euclidean";
  double vcp = 1.0, vct = 1.0;
  val->add_option("instance", val_inst, "instance JSON path")->required();
  val->add_option("plan", val_plan, "plan JSON path (default stdin)");
  val->add_option("--cp", vcp, "pick cost");
  val->add_option("--ct", vct, "unit travel cost");
  val->add_option("--metric", val_metric, "euclidean | manhattan")->check(CLI::IsMember({"euclidean", "manhattan"}));

  // oracle
  auto* orc = app.add_subcommand("oracle", "Exhaustive optimum for a small instance");
  std::string objective = "lex", orc_in, orc_out, orc_metric = "euclidean";
  double cap = lr::default_oracle_cap, ocp = 1.0, oct = 1.0;
  orc->add_option("--objective", objective, "lex | total")->check(CLI::IsMember({"lex", "total"}));
  orc->add_option("--cap", cap, "state-count cap");
  orc->add_option("--cp", ocp, "pick cost");
  orc->add_option("--ct", oct, "unit travel cost");
  orc->add_option("--metric", orc_metric, "euclidean | manhattan")->check(CLI::IsMember({"euclidean", "manhattan"}));
  orc->add_option("instance", orc_in, "instance JSON path (default stdin)");
  orc->add_option("-o,--output", orc_out, "plan output path (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "Run a seeded experiment");
  lr::ExperimentSpec spec;
  std::string format = "csv", bench_out;
  std::uint64_t bench_seed = 0;
  bench->add_option("--experiment", spec.experiment,
                    "lor_ratio | lor_greedy_vs_opt | ltr_cycle_dist | ltr_total_vs_cycles | por_ratios | "
                    "ptr_ratios | cycle_stats")
      ->required()
      ->check(CLI::IsMember(lr::experiment_names()));
  bench->add_option("--sizes", spec.sizes, "sizes (m, or side length for 2D)")->required()->delimiter(',');
  bench->add_option("--trials", spec.trials, "trials per size")->check(CLI::PositiveNumber);
  bench->add_option("--distribution", spec.distribution,
                    "uniform | x_random | column | block | aggregated | pattern_a | pattern_b");
  bench->add_option("--k", spec.k, "number of types");
  bench->add_option("--x", spec.x, "block length for x_random");
  auto* bench_seed_opt = bench->add_option("--seed", bench_seed, "seed (falls back to LATTICE_REARRANGE_SEED)");
  bench->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("-o,--output", bench_out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      const auto seed = resolve_seed(gen_seed_opt, gen_seed);
      const int m1 = g_m1 > 0 ? g_m1 : g_m;
      const int m2 = g_m2 > 0 ? g_m2 : 1;
      lr::Instance inst;
      lr::json extra;
      if (distribution == "uniform") {
        inst = m2 == 1 ? lr::gen_uniform_permutation(m1, seed) : lr::gen_uniform_2d(m1, m2, seed);
      } else if (distribution == "x_random") {
        inst = lr::gen_x_random(m1, g_x, seed);
      } else if (distribution == "column") {
        inst = lr::gen_column_random(m1, m2, seed);
      } else if (distribution == "block") {
        inst = lr::gen_block_random(g_m > 0 ? g_m : m1, seed);
      } else if (distribution == "typed") {
        std::vector<int> counts;
        std::stringstream ss(counts_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
          try {
            counts.push_back(std::stoi(item));
          } catch (const std::exception&) {
            throw lr::rearrange_error("BadCounts", "counts must be comma-separated integers");
          }
        }
        const lr::LatticeDims dims{m1, m2};
        if (pattern == "aggregated" && counts.empty() && g_k > 0) counts = lr::balanced_counts(dims.size(), g_k);
        const auto goal = pattern == "a"   ? lr::GoalPattern::pattern_a()
                          : pattern == "b" ? lr::GoalPattern::pattern_b()
                                           : lr::GoalPattern::aggregated();
        const auto g = lr::gen_typed(dims, g_k, counts, goal, seed);
        inst = g.instance;
        if (g.fallback) extra["pattern_fallback"] = true;
      } else {
        inst = lr::gen_tsp_clusters(parse_points(points_text), {m1, m2});
      }
      auto j = lr::to_json(inst);
      j["seed"] = seed;
      j["distribution"] = distribution;
      for (auto& [key, v] : extra.items()) j[key] = v;
      write_all(gen_out, j.dump() + "\n");
    } else if (solve->parsed()) {
      const lr::CostModel model{cp, ct, parse_metric(metric)};
      lr::validate(model);
      const auto inst = lr::instance_from_json(lr::parse_json(read_all(solve_in)));
      const auto plan = run_solver(solver, inst, model, skip_costly);
      const auto cost = lr::validate_plan(inst, plan, model);
      auto j = lr::to_json(plan);
      j["solver"] = solver;
      j["cost"] = lr::to_json(cost);
      write_all(solve_out, j.dump() + "\n");
      std::cerr << solver << ": " << cost_summary(cost) << "\n";
    } else if (val->parsed()) {
      const lr::CostModel model{vcp, vct, parse_metric(val_metric)};
      lr::validate(model);
      const auto inst = lr::instance_from_json(lr::parse_json(read_all(val_inst)));
      const auto plan = lr::plan_from_json(lr::parse_json(read_all(val_plan)));
      const auto cost = lr::validate_plan(inst, plan, model);
      auto j = lr::to_json(cost);
      j["format_version"] = lr::format_version;
      j["valid"] = true;
      std::cout << j.dump() << "\n";
    } else if (orc->parsed()) {
      const lr::CostModel model{ocp, oct, parse_metric(orc_metric)};
      lr::validate(model);
      const auto inst = lr::instance_from_json(lr::parse_json(read_all(orc_in)));
      const auto obj = objective == "total" ? lr::Objective::weighted_total : lr::Objective::lexicographic;
      const auto result = lr::oracle_optimal(inst, model, obj, cap);
      auto j = lr::to_json(result.plan);
      j["cost"] = lr::to_json(lr::validate_plan(inst, result.plan, model));
      j["objective"] = objective;
      j["expanded"] = result.expanded;
      write_all(orc_out, j.dump() + "\n");
    } else if (bench->parsed()) {
      spec.seed = resolve_seed(bench_seed_opt, bench_seed);
      const auto report = lr::run_experiment(spec);
      const auto text =
          lr::render_report(report, format == "json" ? lr::ReportFormat::json : lr::ReportFormat::csv);
      write_all(bench_out, text);
      for (const auto& [size, secs] : report.seconds) std::cerr << "size " << size << ": " << secs << " s\n";
      for (const auto& f : report.failures)
        std::cerr << "trial " << f.trial << " at size " << f.size << " failed: " << f.code << "\n";
    }
  } catch (const lr::illegal_step& e) {
    std::cerr << lr::json{{"error", e.code()}, {"message", e.what()}, {"step", e.step()}, {"reason", e.reason()}}.dump()
              << "\n";
    return 1;
  } catch (const lr::rearrange_error& e) {
    std::cerr << lr::json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << lr::json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
