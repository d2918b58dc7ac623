#include "mplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "mplan/errors.hpp"

namespace mplan {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scenario parsing

Scenario Scenario::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string dir = ".";
  if (const auto slash = path.find_last_of('/'); slash != std::string::npos)
    dir = path.substr(0, slash);
  return from_json_text(buffer.str(), dir);
}

Scenario Scenario::from_json_text(const std::string& text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  try {
    Scenario s;
    std::string env = doc.at("environment").get<std::string>();
    s.environment = env.starts_with('/') ? env : base_dir + "/" + env;
    for (const auto& name : doc.at("samplers"))
      s.samplers.push_back(parse_sampler_kind(name.get<std::string>()));
    if (s.samplers.empty()) throw ConfigError("scenario: needs at least one sampler");
    s.trials = doc.value("trials", 1);
    if (s.trials < 1) throw ConfigError("scenario: trials must be >= 1");
    s.iterations = doc.value("iterations", 20000);
    if (s.iterations < 1) throw ConfigError("scenario: iterations must be >= 1");
    s.time_budget_ms = doc.value("time_budget_ms", 0.0);
    s.base_seed = doc.value("base_seed", std::uint64_t{1});
    if (doc.contains("params")) {
      const json& p = doc["params"];
      s.params.eta = p.value("eta", s.params.eta);
      s.params.gamma = p.value("gamma", s.params.gamma);
      s.params.use_knn = p.value("use_knn", s.params.use_knn);
      s.params.goal_bias = p.value("goal_bias", s.params.goal_bias);
      s.params.c = p.value("c", s.params.c);
      s.params.hull_rebuild_period = p.value("m", s.params.hull_rebuild_period);
      s.params.epsilon = p.value("epsilon", s.params.epsilon);
      s.params.edge_resolution = p.value("edge_resolution", s.params.edge_resolution);
      s.params.audit_period = p.value("audit_period", s.params.audit_period);
    }
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Statistics

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(xs.size());
}

double sample_std_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

double median_of(std::vector<double> xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double mad_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double med = median_of(xs);
  std::vector<double> devs;
  devs.reserve(xs.size());
  for (double x : xs) devs.push_back(std::abs(x - med));
  return median_of(std::move(devs));
}

// ---------------------------------------------------------------------------
// Scenario execution

bool cutoff_cost(const std::vector<HistoryEntry>& history, double budget, bool by_time,
                 double& cost_out) {
  bool found = false;
  for (const auto& entry : history) {
    const double key = by_time ? entry.elapsed_ms : static_cast<double>(entry.iteration);
    if (key <= budget) {
      cost_out = entry.cost;
      found = true;
    } else {
      break;
    }
  }
  return found;
}

BenchResult run_scenario(const Scenario& scenario, const Environment& env, int workers) {
  const bool by_time = scenario.time_budget_ms > 0.0;
  const double budget = by_time ? scenario.time_budget_ms : scenario.iterations;

  const std::size_t total = scenario.samplers.size() * static_cast<std::size_t>(scenario.trials);
  std::vector<TrialRecord> records(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total) return;
      const std::size_t sampler_idx = job / static_cast<std::size_t>(scenario.trials);
      const int trial = static_cast<int>(job % static_cast<std::size_t>(scenario.trials));

      PlannerParams params = scenario.params;
      params.max_iterations = scenario.iterations;
      params.time_budget_ms = scenario.time_budget_ms;
      params.seed = scenario.base_seed + static_cast<std::uint64_t>(trial);

      const PlanResult result = plan(env, scenario.samplers[sampler_idx], params);

      TrialRecord rec;
      rec.planner = sampler_kind_name(scenario.samplers[sampler_idx]);
      rec.trial_id = trial;
      rec.history = result.history;
      rec.solved = cutoff_cost(rec.history, budget, by_time, rec.final_cost);
      records[job] = std::move(rec);
    }
  };

  const int n_workers = std::max(1, std::min<int>(workers, static_cast<int>(total)));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  BenchResult result;
  result.records = std::move(records);
  for (std::size_t s = 0; s < scenario.samplers.size(); ++s) {
    std::vector<double> costs;
    int solved = 0;
    for (int t = 0; t < scenario.trials; ++t) {
      const auto& rec = result.records[s * static_cast<std::size_t>(scenario.trials) +
                                       static_cast<std::size_t>(t)];
      if (rec.solved) {
        ++solved;
        costs.push_back(rec.final_cost);
      }
    }
    SummaryRow row;
    row.planner = sampler_kind_name(scenario.samplers[s]);
    row.env = env.name();
    row.trials = scenario.trials;
    row.success_rate = static_cast<double>(solved) / static_cast<double>(scenario.trials);
    row.avg = mean_of(costs);
    row.std_dev = sample_std_of(costs);
    row.mad = mad_of(costs);
    result.summary.push_back(std::move(row));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Convergence curves

std::vector<CurveRow> convergence_curve(const std::vector<TrialRecord>& records,
                                        const std::vector<double>& grid, bool by_time) {
  if (records.empty()) throw ContractViolation("convergence_curve: no records");

  std::vector<std::string> planners;
  for (const auto& rec : records)
    if (std::find(planners.begin(), planners.end(), rec.planner) == planners.end())
      planners.push_back(rec.planner);

  std::vector<CurveRow> rows;
  for (const auto& planner : planners) {
    for (double key : grid) {
      std::vector<double> costs;
      for (const auto& rec : records) {
        if (rec.planner != planner) continue;
        double cost;
        if (cutoff_cost(rec.history, key, by_time, cost)) costs.push_back(cost);
      }
      CurveRow row;
      row.planner = planner;
      row.key = key;
      row.solved = static_cast<int>(costs.size());
      if (!costs.empty()) {
        std::sort(costs.begin(), costs.end());
        auto quantile = [&](double p) {
          const double pos = p * static_cast<double>(costs.size() - 1);
          const auto lo = static_cast<std::size_t>(pos);
          const std::size_t hi = std::min(lo + 1, costs.size() - 1);
          const double t = pos - static_cast<double>(lo);
          return costs[lo] + t * (costs[hi] - costs[lo]);
        };
        row.q25 = quantile(0.25);
        row.median = quantile(0.5);
        row.q75 = quantile(0.75);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV output

namespace {

std::string fmt(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

}  // namespace

void write_convergence_csv(std::ostream& out, const std::vector<TrialRecord>& records,
                           bool include_elapsed) {
  out << "trial_id,planner,iteration,elapsed_ms,best_cost\n";
  for (const auto& rec : records)
    for (const auto& entry : rec.history)
      out << rec.trial_id << ',' << rec.planner << ',' << entry.iteration << ','
          << fmt(include_elapsed ? entry.elapsed_ms : 0.0, 3) << ',' << fmt(entry.cost, 6)
          << '\n';
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "planner,env,trials,success_rate,avg,std,mad\n";
  for (const auto& row : rows)
    out << row.planner << ',' << row.env << ',' << row.trials << ',' << fmt(row.success_rate, 4)
        << ',' << fmt(row.avg, 6) << ',' << fmt(row.std_dev, 6) << ',' << fmt(row.mad, 6) << '\n';
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "planner,key,solved,q25,median,q75\n";
  for (const auto& row : rows) {
    out << row.planner << ',' << fmt(row.key, 3) << ',' << row.solved << ',';
    if (row.solved > 0)
      out << fmt(row.q25, 6) << ',' << fmt(row.median, 6) << ',' << fmt(row.q75, 6);
    else
      out << ",,";  // missing marker before the first solution
    out << '\n';
  }
}

}  // namespace mplan
