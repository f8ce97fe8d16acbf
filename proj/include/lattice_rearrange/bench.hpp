#pragma once

// Seeded simulation experiments aggregated into (size, statistic, mean, std,
// trials, seed) rows. Trial seeds are derived from (seed, size, trial index),
// and aggregation runs in trial order, so a report is a pure function of its
// spec. Wall-clock time is kept beside the rows and never serialized.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "core.hpp"
#include "gen.hpp"
#include "io.hpp"
#include "lattice2d.hpp"
#include "lor.hpp"
#include "por.hpp"

namespace lattice_rearrange {

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"lor_ratio",   "lor_greedy_vs_opt", "ltr_cycle_dist", "ltr_total_vs_cycles",
                                              "por_ratios",  "ptr_ratios",        "cycle_stats"};
  return names;
}

// distribution: "uniform" (default), "x_random" (1D, uses x), "column",
// "block" (2D labeled), "pattern_a" / "pattern_b" (2D typed),
// "aggregated" (1D typed).
struct ExperimentSpec {
  std::string experiment;
  std::vector<int> sizes;
  int trials = 100;
  std::string distribution;
  std::uint64_t seed = 0;
  int k = 2;
  int x = 10;
};

struct ReportRow {
  int size = 0;
  std::string statistic;
  double mean = 0.0;
  double std = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> samples;  // per-trial values, not serialized
};

struct TrialFailure {
  int size = 0;
  int trial = 0;
  std::string code;
  std::string message;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<ReportRow> rows;
  std::vector<TrialFailure> failures;
  std::map<int, double> seconds;  // per size
};

inline void validate(const ExperimentSpec& spec) {
  bool known = false;
  for (const auto& n : experiment_names()) known = known || n == spec.experiment;
  if (!known) throw rearrange_error("UnknownExperiment", "unknown experiment \"" + spec.experiment + "\"");
  if (spec.trials < 1) throw rearrange_error("InvalidSpec", "trials must be at least 1");
  if (spec.sizes.empty()) throw rearrange_error("InvalidSpec", "at least one size is required");
  for (int s : spec.sizes)
    if (s < 1) throw rearrange_error("InvalidSpec", "sizes must be positive");
  if (spec.k < 1 || spec.x < 1) throw rearrange_error("InvalidSpec", "k and x must be positive");
}

inline double harmonic(int m) {
  double h = 0.0;
  for (int i = m; i >= 1; --i) h += 1.0 / i;
  return h;
}

namespace detail {

inline double ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

inline Instance labeled_1d(const ExperimentSpec& spec, int m, std::uint64_t seed) {
  const auto& d = spec.distribution;
  if (d.empty() || d == "uniform") return gen_uniform_permutation(m, seed);
  if (d == "x_random") return gen_x_random(m, spec.x, seed);
  throw rearrange_error("InvalidSpec", "distribution \"" + d + "\" does not apply to 1D labeled experiments");
}

inline Instance labeled_2d(const ExperimentSpec& spec, int m, std::uint64_t seed) {
  const auto& d = spec.distribution;
  if (d.empty() || d == "uniform") return gen_uniform_2d(m, m, seed);
  if (d == "column") return gen_column_random(m, m, seed);
  if (d == "block") return gen_block_random(m, seed);
  throw rearrange_error("InvalidSpec", "distribution \"" + d + "\" does not apply to 2D labeled experiments");
}

inline double edge_length(const Instance& inst) {
  double sum = 0.0;
  for (int c = 1; c <= inst.size(); ++c) sum += distance(inst.dims, c, inst.start[c - 1]);
  return sum;
}

using Stats = std::vector<std::pair<std::string, double>>;

inline Stats run_trial(const ExperimentSpec& spec, int m, std::uint64_t seed) {
  const CostModel model;
  const auto& e = spec.experiment;
  if (e == "lor_ratio") {
    const auto inst = labeled_1d(spec, m, seed);
    const double t = validate_plan(inst, opt_plan_lor(inst)).travel;
    return {{"opt_travel_over_m2", t / (static_cast<double>(m) * m)}};
  }
  if (e == "lor_greedy_vs_opt") {
    const auto inst = labeled_1d(spec, m, seed);
    const auto sweep = validate_plan(inst, sweep_cycles_lor(inst));
    const auto opt = validate_plan(inst, opt_plan_lor(inst));
    return {{"sweep_over_opt_travel", ratio(sweep.travel, opt.travel)},
            {"sweep_over_opt_picks", ratio(sweep.picks, opt.picks)}};
  }
  if (e == "ltr_cycle_dist") {
    return {{"D", cycle_distance_statistic(labeled_2d(spec, m, seed))}};
  }
  if (e == "ltr_total_vs_cycles") {
    const auto inst = labeled_2d(spec, m, seed);
    const double edges = edge_length(inst);
    const auto sweep = validate_plan(inst, sweep_cycles_ltr(inst, model));
    const auto sw = validate_plan(inst, switch_cycles_ltr(inst, model));
    return {{"sweep_travel_over_cycle_dist", ratio(sweep.travel, edges)},
            {"switch_travel_over_cycle_dist", ratio(sw.travel, edges)},
            {"sweep_over_switch_travel", ratio(sweep.travel, sw.travel)}};
  }
  if (e == "por_ratios" || e == "ptr_ratios") {
    const bool one_d = e == "por_ratios";
    Instance inst;
    if (one_d) {
      if (!spec.distribution.empty() && spec.distribution != "aggregated")
        throw rearrange_error("InvalidSpec", "por_ratios supports the aggregated distribution only");
      inst = gen_typed({m, 1}, spec.k, balanced_counts(m, spec.k), GoalPattern::aggregated(), seed).instance;
    } else {
      const auto& d = spec.distribution;
      if (d == "pattern_b") inst = gen_typed({m, m}, m, {}, GoalPattern::pattern_b(), seed).instance;
      else if (d.empty() || d == "pattern_a") inst = gen_typed({m, m}, spec.k, {}, GoalPattern::pattern_a(), seed).instance;
      else throw rearrange_error("InvalidSpec", "ptr_ratios supports pattern_a and pattern_b");
    }
    const auto greedy = validate_plan(inst, one_d ? greedy_por(inst, model) : greedy_2d(inst, model), model);
    const auto opt = validate_plan(inst, one_d ? opt_plan_por(inst, model) : plan_ptr(inst, model), model);
    return {{"greedy_over_opt_picks", ratio(greedy.picks, opt.picks)},
            {"greedy_over_opt_travel", ratio(greedy.travel, opt.travel)},
            {"greedy_over_opt_total", ratio(greedy.total, opt.total)}};
  }
  // cycle_stats
  const auto inst = labeled_1d(spec, m, seed);
  const auto set = permutation_cycles(inst.start);
  const auto opt = validate_plan(inst, opt_plan_lor(inst));
  const double cycles = static_cast<double>(set.cycles.size() + set.fixed_points.size());
  const double hm = harmonic(m);
  return {{"cycles_incl_fixed", cycles},
          {"harmonic_m", hm},
          {"picks", static_cast<double>(opt.picks)},
          {"expected_picks", m + hm - 2.0},
          {"opt_travel", opt.travel},
          {"expected_travel", (static_cast<double>(m) * m - 1.0) / 3.0}};
}

}  // namespace detail

inline std::uint64_t trial_seed(std::uint64_t seed, int size, int trial) {
  return derive_seed(derive_seed(seed, static_cast<std::uint64_t>(size)), static_cast<std::uint64_t>(trial));
}

inline ExperimentReport run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  ExperimentReport report;
  report.experiment = spec.experiment;
  for (int m : spec.sizes) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> values;
    for (int trial = 0; trial < spec.trials; ++trial) {
      try {
        for (const auto& [name, v] : detail::run_trial(spec, m, trial_seed(spec.seed, m, trial))) {
          if (!values.count(name)) order.push_back(name);
          values[name].push_back(v);
        }
      } catch (const rearrange_error& err) {
        if (err.code() == "InvalidSpec") throw;
        report.failures.push_back({m, trial, err.code(), err.what()});
      }
    }
    for (const auto& name : order) {
      ReportRow row;
      row.size = m;
      row.statistic = name;
      row.seed = spec.seed;
      row.samples = values[name];
      row.trials = static_cast<int>(row.samples.size());
      double sum = 0.0;
      for (double v : row.samples) sum += v;
      row.mean = sum / row.trials;
      double sq = 0.0;
      for (double v : row.samples) sq += (v - row.mean) * (v - row.mean);
      row.std = row.trials > 1 ? std::sqrt(sq / (row.trials - 1)) : 0.0;
      report.rows.push_back(std::move(row));
    }
    report.seconds[m] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return report;
}

enum class ReportFormat { csv, json };

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string report_csv(const ExperimentReport& report) {
  std::string out = "size,statistic,mean,std,trials,seed\n";
  for (const auto& r : report.rows)
    out += std::to_string(r.size) + "," + r.statistic + "," + format_number(r.mean) + "," + format_number(r.std) + "," +
           std::to_string(r.trials) + "," + std::to_string(r.seed) + "\n";
  return out;
}

inline json report_json(const ExperimentReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"size", r.size},
                    {"statistic", r.statistic},
                    {"mean", r.mean},
                    {"std", r.std},
                    {"trials", r.trials},
                    {"seed", r.seed}});
  json failures = json::array();
  for (const auto& f : report.failures)
    failures.push_back({{"size", f.size}, {"trial", f.trial}, {"error", f.code}, {"message", f.message}});
  return {{"format_version", format_version},
          {"experiment", report.experiment},
          {"rows", std::move(rows)},
          {"failures", std::move(failures)}};
}

inline ExperimentReport report_from_json(const json& j) {
  ExperimentReport report;
  report.experiment = detail::require_field(j, "experiment").get<std::string>();
  for (const auto& r : detail::require_field(j, "rows")) {
    ReportRow row;
    row.size = detail::as_int(detail::require_field(r, "size"), "size");
    row.statistic = detail::require_field(r, "statistic").get<std::string>();
    row.mean = detail::require_field(r, "mean").get<double>();
    row.std = detail::require_field(r, "std").get<double>();
    row.trials = detail::as_int(detail::require_field(r, "trials"), "trials");
    row.seed = detail::require_field(r, "seed").get<std::uint64_t>();
    report.rows.push_back(std::move(row));
  }
  if (j.contains("failures"))
    for (const auto& f : j["failures"])
      report.failures.push_back({detail::as_int(f.at("size"), "size"), detail::as_int(f.at("trial"), "trial"),
                                 f.at("error").get<std::string>(), f.at("message").get<std::string>()});
  return report;
}

inline std::string render_report(const ExperimentReport& report, ReportFormat format) {
  if (format == ReportFormat::csv) return report_csv(report);
  return report_json(report).dump(2) + "\n";
}

// Writes to `path`, or returns the text when path is empty.
inline std::string emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path = {}) {
  auto text = render_report(report, format);
  if (path.empty()) return text;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rearrange_error("IoError", "cannot open " + path + " for writing");
  out << text;
  if (!out) throw rearrange_error("IoError", "failed writing " + path);
  return text;
}

}  // namespace lattice_rearrange
