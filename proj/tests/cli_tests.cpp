// End-to-end tests of the command-line tool. Usage: cli_tests <cli> <srcdir>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int failures = 0;

#define EXPECT(cond, msg)                                                       \
  do {                                                                          \
    if (!(cond)) {                                                              \
      std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << (msg)     \
                << "\n";                                                        \
      ++failures;                                                               \
    }                                                                           \
  } while (0)

std::string cli_path;
fs::path work_dir;

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args) {
  const fs::path out_file = work_dir / "stdout.txt";
  const fs::path err_file = work_dir / "stderr.txt";
  const std::string cmd =
      cli_path + " " + args + " > " + out_file.string() + " 2> " + err_file.string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

const char* kEmptyEnv = R"({
  "workspace_dim": 2,
  "bounds": {"min": [0, 0], "max": [500, 500]},
  "obstacles": [],
  "robot": {"half_extents": [5, 5], "rotatable": false},
  "start": [10, 10],
  "goal_box": {"min": [487.5, 487.5], "max": [492.5, 492.5]}
})";

void test_flag_errors() {
  EXPECT(run("plan").exit_code == 1, "plan without --env must exit 1");
  EXPECT(run("plan --env /nonexistent.json").exit_code == 1, "unreadable env must exit 1");
  EXPECT(run("bogus-subcommand").exit_code == 1, "unknown subcommand must exit 1");

  const fs::path env = work_dir / "empty.json";
  write_file(env, kEmptyEnv);
  EXPECT(run("plan --env " + env.string() + " --sampler warp").exit_code == 1,
         "unknown sampler must exit 1");
}

void test_plan_outputs() {
  const fs::path env = work_dir / "empty.json";
  write_file(env, kEmptyEnv);
  const fs::path path_csv = work_dir / "path.csv";
  const fs::path tree_csv = work_dir / "tree.csv";
  const fs::path fig = work_dir / "fig.svg";

  const std::string args = "plan --env " + env.string() +
                           " --sampler pic --iters 2500 --seed 5 --eta 30 --out " +
                           path_csv.string() + " --tree " + tree_csv.string() + " --svg " +
                           fig.string();
  const RunResult r = run(args);
  EXPECT(r.exit_code == 0, "plan on an empty map must succeed");
  EXPECT(r.out.find("cost ") != std::string::npos, "plan prints the final cost");
  EXPECT(r.out.find("first_solution_iteration ") != std::string::npos,
         "plan prints the first-solution iteration");
  EXPECT(fs::exists(path_csv), "path csv written");
  EXPECT(fs::exists(tree_csv), "tree csv written");
  EXPECT(fs::exists(fig), "svg written");

  // waypoint rows have one column per dimension
  std::ifstream in(path_csv);
  std::string first_line;
  std::getline(in, first_line);
  EXPECT(std::count(first_line.begin(), first_line.end(), ',') == 1, "2 columns for 2 dims");
  EXPECT(first_line.substr(0, 9) == "10.000000", "path starts at the start configuration");

  const std::string tree_head = read_file(tree_csv).substr(0, 45);
  EXPECT(tree_head.find("parent_x0,parent_x1,child_x0,child_x1,cost") == 0,
         "tree csv header");

  const std::string svg = read_file(fig);
  EXPECT(svg.find("<?xml") == 0, "svg xml declaration");
  EXPECT(svg.find("<svg") != std::string::npos, "svg root element");
  EXPECT(svg.find("id=\"obstacles\"") != std::string::npos, "obstacles layer");
  EXPECT(svg.find("id=\"tree\"") != std::string::npos, "tree layer");
  EXPECT(svg.find("id=\"path\"") != std::string::npos, "path layer");
  EXPECT(svg.find("id=\"sampling-region\"") != std::string::npos, "sampling region layer");
  EXPECT(svg.rfind("</svg>\n") == svg.size() - 7, "svg closes properly");

  // identical flags and seed reproduce identical bytes
  const fs::path path2 = work_dir / "path2.csv";
  const fs::path tree2 = work_dir / "tree2.csv";
  const fs::path fig2 = work_dir / "fig2.svg";
  run("plan --env " + env.string() + " --sampler pic --iters 2500 --seed 5 --eta 30 --out " +
      path2.string() + " --tree " + tree2.string() + " --svg " + fig2.string());
  EXPECT(read_file(path_csv) == read_file(path2), "path csv reproducible");
  EXPECT(read_file(tree_csv) == read_file(tree2), "tree csv reproducible");
  EXPECT(read_file(fig) == read_file(fig2), "svg reproducible");
}

void test_plan_no_solution() {
  // goal pocket sealed off by walls
  const fs::path env = work_dir / "sealed.json";
  write_file(env, R"({
    "workspace_dim": 2,
    "bounds": {"min": [0, 0], "max": [100, 100]},
    "obstacles": [{"min": [80, 80], "max": [84, 100]}, {"min": [80, 80], "max": [100, 84]}],
    "robot": {"half_extents": [1, 1], "rotatable": false},
    "start": [10, 10],
    "goal_box": {"min": [90, 90], "max": [95, 95]}
  })");
  const RunResult r = run("plan --env " + env.string() + " --iters 400 --seed 2");
  EXPECT(r.exit_code == 2, "unreachable goal must exit 2");
  EXPECT(r.out.find("no solution") != std::string::npos, "no-solution message");
}

void test_slice_command() {
  const fs::path fig6 = work_dir / "fig6.csv";
  write_file(fig6, "-3,0,0\n0,-2,-2\n2,2,0\n3,2,2\n5,0,0\n");
  const fs::path svg = work_dir / "slice.svg";

  const RunResult r = run("slice --path " + fig6.string() + " --svg " + svg.string());
  EXPECT(r.exit_code == 0, "slice on the example path succeeds");
  EXPECT(r.out.find("vertices (0.0000, 0.0000) (3.0000, 2.8284) (6.0000, 2.8284) "
                    "(8.0000, 0.0000)") != std::string::npos,
         "extremal vertices of the example slice");
  EXPECT(r.out.find("extent 8.0000") != std::string::npos, "axis extent");
  EXPECT(fs::exists(svg), "slice svg written");

  const fs::path straight = work_dir / "straight.csv";
  write_file(straight, "0,0\n2,0\n7,0\n");
  const RunResult r2 = run("slice --path " + straight.string());
  EXPECT(r2.exit_code == 0, "straight path slice succeeds");
  EXPECT(r2.out.find("vertices (0.0000, 0.0000) (7.0000, 0.0000)") != std::string::npos,
         "straight path has two vertices");

  const fs::path single = work_dir / "single.csv";
  write_file(single, "1,2\n");
  EXPECT(run("slice --path " + single.string()).exit_code == 1,
         "fewer than two waypoints must exit 1");

  const fs::path loop = work_dir / "loop.csv";
  write_file(loop, "1,2\n4,5\n1,2\n");
  EXPECT(run("slice --path " + loop.string()).exit_code == 1,
         "coincident endpoints must exit 1");
}

void test_bench_command() {
  const fs::path env = work_dir / "empty.json";
  write_file(env, kEmptyEnv);
  const fs::path scenario = work_dir / "scenario.json";
  write_file(scenario, R"({
    "environment": "empty.json",
    "samplers": ["informed", "c"],
    "trials": 2,
    "iterations": 1200,
    "base_seed": 9,
    "params": {"eta": 30.0}
  })");

  const fs::path out1 = work_dir / "bench1";
  const RunResult r = run("bench --scenario " + scenario.string() + " --out-dir " +
                          out1.string() + " --curve");
  EXPECT(r.exit_code == 0, "bench runs");
  EXPECT(fs::exists(out1 / "convergence.csv"), "convergence csv written");
  EXPECT(fs::exists(out1 / "summary.csv"), "summary csv written");
  EXPECT(fs::exists(out1 / "curve.csv"), "curve csv written");
  EXPECT(r.out.find("informed") != std::string::npos, "summary table printed");

  const std::string convergence = read_file(out1 / "convergence.csv");
  EXPECT(convergence.find("trial_id,planner,iteration,elapsed_ms,best_cost") == 0,
         "convergence header");
  const std::string summary = read_file(out1 / "summary.csv");
  EXPECT(summary.find("planner,env,trials,success_rate,avg,std,mad") == 0, "summary header");
  EXPECT(summary.find("\ninformed,empty,2,") != std::string::npos, "summary row");

  // deterministic rerun: byte-identical CSVs (with 2 workers for good measure)
  const fs::path out2 = work_dir / "bench2";
  run("bench --scenario " + scenario.string() + " --out-dir " + out2.string() +
      " --workers 2 --curve");
  EXPECT(read_file(out1 / "convergence.csv") == read_file(out2 / "convergence.csv"),
         "convergence csv reproducible");
  EXPECT(read_file(out1 / "summary.csv") == read_file(out2 / "summary.csv"),
         "summary csv reproducible");
  EXPECT(read_file(out1 / "curve.csv") == read_file(out2 / "curve.csv"),
         "curve csv reproducible");

  // malformed scenario: exit 1 with a line-anchored parse message
  const fs::path bad = work_dir / "bad.json";
  write_file(bad, "{\n  \"environment\": \"e.json\",\n  samplers: []\n}");
  const RunResult rb = run("bench --scenario " + bad.string() + " --out-dir " + out1.string());
  EXPECT(rb.exit_code == 1, "malformed scenario must exit 1");
  EXPECT(rb.err.find("line") != std::string::npos, "parse error names the line");
}

void test_bundled_environments() {
  const fs::path envs = fs::path(std::getenv("MPLAN_SRC") ? std::getenv("MPLAN_SRC") : ".");
  for (const char* name :
       {"comb.json", "hard.json", "wall.json", "maze.json", "random3d.json", "comb3d.json"}) {
    const fs::path env = envs / "envs" / name;
    EXPECT(fs::exists(env), std::string("bundled environment present: ") + name);
    const RunResult r = run("plan --env " + env.string() + " --iters 1 --seed 1");
    EXPECT(r.exit_code == 0 || r.exit_code == 2,
           std::string("bundled environment loads: ") + name);
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_tests <cli-binary> <source-dir>\n";
    return 2;
  }
  cli_path = argv[1];
  setenv("MPLAN_SRC", argv[2], 1);
  work_dir = fs::temp_directory_path() / "mplan_cli_tests";
  fs::remove_all(work_dir);
  fs::create_directories(work_dir);

  test_flag_errors();
  test_plan_outputs();
  test_plan_no_solution();
  test_slice_command();
  test_bench_command();
  test_bundled_environments();

  if (failures == 0) {
    std::cout << "all cli tests passed\n";
    return 0;
  }
  std::cerr << failures << " cli test(s) failed\n";
  return 1;
}
