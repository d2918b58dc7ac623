// Command-line front end: single planning runs, benchmark scenarios, and
// slice inspection with optional SVG figures.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mplan/bench.hpp"
#include "mplan/collision.hpp"
#include "mplan/errors.hpp"
#include "mplan/planner.hpp"
#include "mplan/sampling.hpp"
#include "mplan/svg.hpp"

namespace {

using namespace mplan;

std::string fmt(double value, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

void write_path_csv(const std::string& file, const Path& path) {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write " + file);
  for (const auto& q : path.points) {
    for (int i = 0; i < q.size(); ++i) out << (i ? "," : "") << fmt(q[i]);
    out << '\n';
  }
}

Path read_path_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open path file: " + file);
  std::vector<Configuration> points;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
    Configuration q(static_cast<int>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) q[static_cast<int>(i)] = values[i];
    if (!points.empty() && points.front().size() != q.size())
      throw ConfigError(file + ": inconsistent column count");
    points.push_back(std::move(q));
  }
  return Path(std::move(points));
}

void write_tree_csv(const std::string& file, const std::vector<Tree::Node>& nodes, int dim) {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write " + file);
  for (int i = 0; i < dim; ++i) out << "parent_x" << i << ',';
  for (int i = 0; i < dim; ++i) out << "child_x" << i << ',';
  out << "cost\n";
  for (const auto& node : nodes) {
    if (node.parent < 0) continue;
    const auto& parent = nodes[static_cast<std::size_t>(node.parent)].config;
    for (int i = 0; i < dim; ++i) out << fmt(parent[i]) << ',';
    for (int i = 0; i < dim; ++i) out << fmt(node.config[i]) << ',';
    out << fmt(node.cost) << '\n';
  }
}

std::vector<std::pair<double, double>> slice_outline_2d(const Slice& slice) {
  // Footprint of the hull of revolution in the translation plane: axis
  // positions from the metric frame (translation weights are 1), offsets of
  // magnitude f along the in-plane normal of the axis.
  const Eigen::VectorXd& o = slice.frame.origin;
  const Eigen::VectorXd& d = slice.frame.direction;
  const double dx = d[0], dy = d[1];
  const double len2 = std::hypot(dx, dy);
  std::vector<std::pair<double, double>> outline;
  if (len2 < 1e-9) return outline;
  const double nx = -dy / len2, ny = dx / len2;
  for (const auto& v : slice.vertices)
    outline.emplace_back(o[0] + v.a * dx + v.f * nx, o[1] + v.a * dy + v.f * ny);
  for (auto it = slice.vertices.rbegin(); it != slice.vertices.rend(); ++it)
    outline.emplace_back(o[0] + it->a * dx - it->f * nx, o[1] + it->a * dy - it->f * ny);
  return outline;
}

void write_plan_svg(const std::string& file, const Environment& env,
                    const std::vector<Tree::Node>& nodes, const std::optional<Path>& path,
                    const std::optional<Slice>& slice) {
  const auto& b = env.bounds();
  SvgWriter svg(b.min[0], b.min[1], b.max[0], b.max[1]);

  svg.begin_group("workspace");
  svg.rect(b.min[0], b.min[1], b.max[0], b.max[1], "white", "black", 1.0);
  svg.end_group();

  svg.begin_group("obstacles");
  for (const auto& obs : env.obstacles())
    svg.rect(obs.min[0], obs.min[1], obs.max[0], obs.max[1], "#808080");
  svg.end_group();

  if (slice) {
    svg.begin_group("sampling-region");
    const auto outline = slice_outline_2d(*slice);
    if (outline.size() >= 3) svg.polygon(outline, "none", "#2060c0", 1.5);
    svg.end_group();
  }

  svg.begin_group("tree");
  for (const auto& node : nodes) {
    if (node.parent < 0) continue;
    const auto& p = nodes[static_cast<std::size_t>(node.parent)].config;
    svg.line(p[0], p[1], node.config[0], node.config[1], "#d04040", 0.4);
  }
  svg.end_group();

  svg.begin_group("path");
  if (path) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& q : path->points) pts.emplace_back(q[0], q[1]);
    svg.polyline(pts, "#1030e0", 2.5);
  }
  svg.end_group();

  svg.begin_group("markers");
  svg.circle(env.start()[0], env.start()[1], 4.0, "#10a010");
  const auto& g = env.goal_box();
  svg.rect(g.min[0], g.min[1], g.max[0], g.max[1], "none", "#10a010", 1.5);
  svg.end_group();

  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write " + file);
  out << svg.str();
}

void write_slice_svg(const std::string& file, const Slice& slice) {
  double max_f = 1e-9;
  for (const auto& v : slice.vertices) max_f = std::max(max_f, v.f);
  SvgWriter svg(-0.05 * slice.extent(), -0.1 * max_f, 1.05 * slice.extent(), 1.1 * max_f);
  svg.begin_group("axis");
  svg.line(0.0, 0.0, slice.extent(), 0.0, "black", max_f / 200.0);
  svg.end_group();
  svg.begin_group("slice");
  std::vector<std::pair<double, double>> pts;
  for (const auto& v : slice.vertices) pts.emplace_back(v.a, v.f);
  svg.polygon(pts, "#cfe0f5", "#2060c0", max_f / 100.0);
  svg.end_group();
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write " + file);
  out << svg.str();
}

// -------------------------------------------------------------------------

int cmd_plan(const std::string& env_file, const std::string& sampler, int iters,
             std::uint64_t seed, int c, int m, double eps, double goal_bias, double eta,
             double resolution, const std::string& out_csv, const std::string& tree_csv,
             const std::string& svg_file) {
  const Environment env = Environment::from_json_file(env_file);

  PlannerParams params;
  params.max_iterations = iters;
  params.seed = seed;
  params.c = c;
  params.hull_rebuild_period = m;
  params.epsilon = eps;
  params.goal_bias = goal_bias;
  if (eta > 0.0) params.eta = eta;
  if (resolution > 0.0) params.edge_resolution = resolution;
  params.keep_tree = !tree_csv.empty() || !svg_file.empty();

  const SamplerKind kind = parse_sampler_kind(sampler);
  const PlanResult result = plan(env, kind, params);

  if (result.best_path) {
    std::cout << "cost " << fmt(result.best_cost) << "\n"
              << "first_solution_iteration " << *result.first_solution_iteration << "\n";
  } else {
    std::cout << "no solution within " << iters << " iterations\n";
  }

  if (!out_csv.empty() && result.best_path) write_path_csv(out_csv, *result.best_path);
  if (!tree_csv.empty()) write_tree_csv(tree_csv, result.tree, env.space().dim());
  if (!svg_file.empty()) {
    if (env.workspace_dim() != 2) {
      std::cerr << "svg export is limited to 2D workspaces\n";
      return 1;
    }
    std::optional<Slice> slice;
    if (result.best_path && result.best_path->size() >= 2)
      slice = build_slice(env.space(), *result.best_path);
    write_plan_svg(svg_file, env, result.tree, result.best_path, slice);
  }
  return result.best_path ? 0 : 2;
}

int cmd_bench(const std::string& scenario_file, const std::string& out_dir, int workers,
              bool write_curve) {
  const Scenario scenario = Scenario::from_json_file(scenario_file);
  const Environment env = Environment::from_json_file(scenario.environment);
  const BenchResult result = run_scenario(scenario, env, workers);

  std::filesystem::create_directories(out_dir);
  const bool by_time = scenario.time_budget_ms > 0.0;
  {
    std::ofstream out(out_dir + "/convergence.csv");
    if (!out) throw ConfigError("cannot write " + out_dir + "/convergence.csv");
    // Iteration-budget runs write elapsed_ms as 0 to keep outputs
    // byte-reproducible; wall-clock runs keep the measured times.
    write_convergence_csv(out, result.records, by_time);
  }
  {
    std::ofstream out(out_dir + "/summary.csv");
    if (!out) throw ConfigError("cannot write " + out_dir + "/summary.csv");
    write_summary_csv(out, result.summary);
  }
  if (write_curve) {
    std::vector<double> grid;
    const double budget = by_time ? scenario.time_budget_ms : scenario.iterations;
    for (int i = 1; i <= 50; ++i) grid.push_back(budget * i / 50.0);
    std::ofstream out(out_dir + "/curve.csv");
    if (!out) throw ConfigError("cannot write " + out_dir + "/curve.csv");
    write_curve_csv(out, convergence_curve(result.records, grid, by_time));
  }

  std::cout << "planner  env  trials  success  avg  std  mad\n";
  for (const auto& row : result.summary)
    std::cout << row.planner << "  " << row.env << "  " << row.trials << "  "
              << fmt(row.success_rate, 2) << "  " << fmt(row.avg, 2) << "  "
              << fmt(row.std_dev, 2) << "  " << fmt(row.mad, 2) << "\n";
  return 0;
}

int cmd_slice(const std::string& path_file, const std::string& svg_file) {
  const Path path = read_path_csv(path_file);
  if (path.size() < 2) {
    std::cerr << "slice: need at least two waypoints\n";
    return 1;
  }
  const Slice slice = build_slice(path);
  const auto& frame = slice.frame;

  auto print_vec = [](const Eigen::VectorXd& v) {
    std::cout << '(';
    for (int i = 0; i < v.size(); ++i) std::cout << (i ? ", " : "") << fmt(v[i], 4);
    std::cout << ')';
  };
  std::cout << "origin ";
  print_vec(frame.origin);
  std::cout << "\ndirection ";
  print_vec(frame.direction);
  std::cout << "\nextent " << fmt(frame.extent, 4) << "\n";

  std::cout << "transformed";
  for (const auto& p : path.points) {
    const SlicePoint sp = transf(frame, p);
    std::cout << " (" << fmt(sp.a, 4) << ", " << fmt(sp.f, 4) << ')';
  }
  std::cout << "\nvertices";
  for (const auto& v : slice.vertices)
    std::cout << " (" << fmt(v.a, 4) << ", " << fmt(v.f, 4) << ')';
  std::cout << "\n";

  if (!svg_file.empty()) write_slice_svg(svg_file, slice);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-based optimal path planning benchmark"};
  app.require_subcommand(1);

  // plan
  std::string env_file, sampler = "informed", out_csv, tree_csv, svg_file;
  int iters = 20000, c = 5, m = 1000;
  std::uint64_t seed = 1;
  double eps = 1e-5, goal_bias = 0.05, eta = 0.0, resolution = 0.0;
  auto* plan_cmd = app.add_subcommand("plan", "run one planning trial");
  plan_cmd->add_option("--env", env_file, "environment JSON file")->required();
  plan_cmd->add_option("--sampler", sampler, "uniform|informed|pi|c|pic");
  plan_cmd->add_option("--iters", iters, "iteration budget");
  plan_cmd->add_option("--seed", seed, "RNG seed");
  plan_cmd->add_option("--c", c, "minimum subpath cardinality");
  plan_cmd->add_option("--m", m, "hull rebuild period");
  plan_cmd->add_option("--eps", eps, "informed-mixing probability");
  plan_cmd->add_option("--goal-bias", goal_bias, "pre-solution goal sampling probability");
  plan_cmd->add_option("--eta", eta, "steer step");
  plan_cmd->add_option("--resolution", resolution, "edge collision resolution");
  plan_cmd->add_option("--out", out_csv, "best path CSV output");
  plan_cmd->add_option("--tree", tree_csv, "tree edge list CSV output");
  plan_cmd->add_option("--svg", svg_file, "figure output (2D workspaces)");

  // bench
  std::string scenario_file, out_dir = ".";
  int workers = 1;
  bool write_curve = false;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark scenario");
  bench_cmd->add_option("--scenario", scenario_file, "scenario JSON file")->required();
  bench_cmd->add_option("--out-dir", out_dir, "output directory for CSV files");
  bench_cmd->add_option("--workers", workers, "parallel trial workers");
  bench_cmd->add_flag("--curve", write_curve, "also write quartile curve CSV");

  // slice
  std::string path_file, slice_svg;
  auto* slice_cmd = app.add_subcommand("slice", "inspect the convex slice of a path");
  slice_cmd->add_option("--path", path_file, "waypoint CSV file")->required();
  slice_cmd->add_option("--svg", slice_svg, "slice polygon figure output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    if (plan_cmd->parsed())
      return cmd_plan(env_file, sampler, iters, seed, c, m, eps, goal_bias, eta, resolution,
                      out_csv, tree_csv, svg_file);
    if (bench_cmd->parsed()) return cmd_bench(scenario_file, out_dir, workers, write_curve);
    if (slice_cmd->parsed()) return cmd_slice(path_file, slice_svg);
  } catch (const DegenerateAxis& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
