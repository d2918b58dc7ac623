#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mplan/planner.hpp"

namespace mplan {

/// Benchmark description: one environment, several samplers, repeated seeded
/// trials under an iteration budget (optionally a wall-clock budget).
struct Scenario {
  std::string environment;  // environment file path
  std::vector<SamplerKind> samplers;
  int trials = 1;
  int iterations = 20000;
  double time_budget_ms = 0.0;  // 0 keeps the run iteration-bounded
  std::uint64_t base_seed = 1;
  PlannerParams params;  // per-planner overrides (seed/iterations set per trial)

  /// Parses the scenario JSON; the environment path is resolved relative to
  /// the scenario file's directory.
  static Scenario from_json_file(const std::string& path);
  static Scenario from_json_text(const std::string& text, const std::string& base_dir);
};

struct TrialRecord {
  std::string planner;
  int trial_id = 0;
  std::vector<HistoryEntry> history;
  bool solved = false;
  double final_cost = 0.0;  // cost at the budget cutoff; valid when solved
};

struct SummaryRow {
  std::string planner;
  std::string env;
  int trials = 0;
  double success_rate = 0.0;
  double avg = 0.0;
  double std_dev = 0.0;  // sample standard deviation
  double mad = 0.0;      // median absolute deviation from the median
};

struct BenchResult {
  std::vector<TrialRecord> records;  // ordered by (sampler, trial)
  std::vector<SummaryRow> summary;
};

/// Runs trials for every sampler in the scenario. Trial i uses seed
/// base_seed + i for every sampler, so comparisons are seed-paired. Trials
/// may run on up to `workers` threads; record order and all statistics are
/// independent of the worker count.
BenchResult run_scenario(const Scenario& scenario, const Environment& env, int workers = 1);

/// Cost of the last history entry at or before the budget cutoff. In
/// iteration mode (by_time false) the key is the iteration number. Returns
/// false when no solution exists by the cutoff.
bool cutoff_cost(const std::vector<HistoryEntry>& history, double budget, bool by_time,
                 double& cost_out);

/// Median / quartile best cost per planner at each grid point, carrying the
/// last value forward. Trials without a solution at a grid point are counted
/// in `solved` only.
struct CurveRow {
  std::string planner;
  double key = 0.0;  // iteration or elapsed ms
  int solved = 0;
  double q25 = 0.0, median = 0.0, q75 = 0.0;
};
std::vector<CurveRow> convergence_curve(const std::vector<TrialRecord>& records,
                                        const std::vector<double>& grid, bool by_time);

// Deterministic CSV writers (fixed precision, '\n' line ends).
void write_convergence_csv(std::ostream& out, const std::vector<TrialRecord>& records,
                           bool include_elapsed);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows);

// Descriptive statistics over a sample (used for the summary rows).
double mean_of(const std::vector<double>& xs);
double sample_std_of(const std::vector<double>& xs);
double median_of(std::vector<double> xs);
double mad_of(const std::vector<double>& xs);

}  // namespace mplan
