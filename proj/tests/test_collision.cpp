#include <doctest.h>

#include <cmath>

#include "mplan/collision.hpp"
#include "mplan/errors.hpp"
#include "mplan/rng.hpp"

using namespace mplan;

namespace {

Configuration vec(std::initializer_list<double> values) {
  Configuration q(static_cast<int>(values.size()));
  int i = 0;
  for (double v : values) q[i++] = v;
  return q;
}

Aabb box2(double x0, double y0, double x1, double y1) {
  return {vec({x0, y0}), vec({x1, y1})};
}

Environment make_env2(std::vector<Aabb> obstacles, Eigen::VectorXd half = vec({5, 5}),
                      Configuration start = vec({50, 50, 0})) {
  return Environment(2, box2(0, 0, 500, 500), std::move(obstacles), std::move(half), true,
                     std::move(start), box2(480, 480, 490, 490));
}

/// Dense point-sampling oracle of the rotated robot footprint: true iff any
/// sampled footprint point is inside the obstacle or outside the bounds.
bool footprint_hits(const Environment& env, const Configuration& q, int grid = 201) {
  const RobotPose pose = env.pose_from_config(q);
  const auto& h = env.robot_half_extents();
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      Eigen::Vector2d body(-h[0] + 2.0 * h[0] * i / (grid - 1),
                           -h[1] + 2.0 * h[1] * j / (grid - 1));
      const Eigen::Vector2d world = pose.translation + pose.rotation * body;
      if (!env.bounds().contains(world)) return true;
      for (const auto& obs : env.obstacles())
        if (obs.contains(world)) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("environment validation") {
  CHECK_THROWS_AS(make_env2({box2(10, 10, 5, 20)}), ConfigError);  // inverted obstacle
  CHECK_THROWS_AS(
      Environment(2, box2(0, 0, 100, 100), {}, vec({5, 5}), true, vec({50, 50, 0}),
                  box2(90, 90, 120, 95)),
      ConfigError);  // goal box outside bounds
  CHECK_THROWS_AS(make_env2({box2(40, 40, 60, 60)}), ConfigError);  // start in collision
}

TEST_CASE("free checks in an empty environment") {
  const Environment env = make_env2({});
  CHECK(is_free(env, vec({250, 250, 0.3})));
  CHECK(is_free(env, vec({250, 250, M_PI / 4})));
  CHECK(is_free(env, vec({5, 5, 0})));          // touching the boundary: still inside
  CHECK_FALSE(is_free(env, vec({4, 250, 0})));  // robot pokes out of bounds
  CHECK_FALSE(is_free(env, vec({5, 5, M_PI / 4})));  // rotated corners poke out
}

TEST_CASE("robot inside an obstacle is in collision") {
  const Environment env = make_env2({box2(200, 200, 300, 300)});
  CHECK_FALSE(is_free(env, vec({250, 250, 0})));
  CHECK_FALSE(is_free(env, vec({250, 250, 1.1})));
  CHECK(is_free(env, vec({100, 100, 0})));
  // just beside the obstacle
  CHECK(is_free(env, vec({194.9, 250, 0})));
  CHECK_FALSE(is_free(env, vec({195.1, 250, 0})));
}

TEST_CASE("rotated corner overlap agrees with the footprint oracle") {
  // 10x10 square rotated 45 deg; its corner reaches 5*sqrt(2) from the center
  // and penetrates the obstacle edge by 0.1 units.
  const double reach = 5.0 * std::sqrt(2.0);
  const Aabb obstacle = box2(250.0 + reach - 0.1, 150.0, 250.0 + reach + 20.0, 350.0);
  const Environment env = make_env2({obstacle});

  const Configuration q = vec({250, 250, M_PI / 4});
  CHECK_FALSE(is_free(env, q));
  CHECK(footprint_hits(env, q));

  // backing off by 0.2 units clears it
  const Configuration clear = vec({249.8, 250, M_PI / 4});
  CHECK(is_free(env, clear));
  CHECK_FALSE(footprint_hits(env, clear));

  // axis-aligned at the same spot does not reach the obstacle
  const Configuration axis_aligned = vec({250, 250, 0});
  CHECK(is_free(env, axis_aligned));
  CHECK_FALSE(footprint_hits(env, axis_aligned));
}

TEST_CASE("is_free never contradicts the footprint oracle") {
  // The grid oracle can miss sub-grid penetrations, but a sampled footprint
  // point inside an obstacle is proof of collision.
  const Environment env = make_env2({box2(180, 180, 320, 320), box2(0, 400, 120, 470)});
  RngStream rng(42);
  int collisions = 0, free_count = 0;
  for (int i = 0; i < 300; ++i) {
    const Configuration q =
        vec({rng.uniform(10, 490), rng.uniform(10, 490), rng.uniform(0, 2 * M_PI)});
    const bool free = is_free(env, q);
    if (footprint_hits(env, q)) REQUIRE_FALSE(free);
    if (free)
      ++free_count;
    else
      ++collisions;
  }
  CHECK(collisions > 0);
  CHECK(free_count > 0);
}

TEST_CASE("rotation consistency under quarter-turn world rotations") {
  // rotate robot pose and obstacle together by 90 degrees about the map
  // center; verdicts must be preserved (obstacles stay axis-aligned).
  RngStream rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const double cx = 250, cy = 250;
    const double ox0 = rng.uniform(50, 400), oy0 = rng.uniform(50, 400);
    const double w = rng.uniform(5, 60), h = rng.uniform(5, 60);
    const Aabb obstacle = box2(ox0, oy0, ox0 + w, oy0 + h);

    // quarter-turn of the obstacle about the center
    const Aabb rotated = box2(cx - (oy0 + h - cy), cy + (ox0 - cx),
                              cx - (oy0 - cy), cy + (ox0 + w - cx));

    const double px = rng.uniform(60, 440), py = rng.uniform(60, 440);
    const double theta = rng.uniform(0, 2 * M_PI);
    const Configuration pose = vec({px, py, theta});
    const Configuration pose_rotated =
        vec({cx - (py - cy), cy + (px - cx), std::fmod(theta + M_PI / 2, 2 * M_PI)});

    const Environment env1(2, box2(0, 0, 500, 500), {obstacle}, vec({4, 7}), true,
                           vec({10, 10, 0}), box2(480, 480, 490, 490));
    const Environment env2(2, box2(0, 0, 500, 500), {rotated}, vec({4, 7}), true,
                           vec({10, 10, 0}), box2(480, 480, 490, 490));
    REQUIRE(is_free(env1, pose) == is_free(env2, pose_rotated));
  }
}

TEST_CASE("3D oriented box collision") {
  const Environment env(3, {vec({0, 0, 0}), vec({215, 215, 215})},
                        {{vec({100, 100, 100}), vec({130, 130, 130})}}, vec({5, 5, 5}), true,
                        vec({20, 20, 20, 0, 0, 0}), {vec({200, 200, 200}), vec({210, 210, 210})});
  CHECK(is_free(env, vec({50, 50, 50, 0.3, 0.2, 0.1})));
  CHECK_FALSE(is_free(env, vec({115, 115, 115, 0, 0, 0})));
  CHECK_FALSE(is_free(env, vec({115, 115, 95, 0.6, 0.4, 0.2})));  // diagonal reach hits
  CHECK(is_free(env, vec({115, 115, 80, 0, 0, 0})));  // axis-aligned clears the corner
  CHECK_FALSE(is_free(env, vec({3, 50, 50, 0, 0, 0})));  // out of bounds
}

TEST_CASE("segment collision checks") {
  const Environment env = make_env2({box2(240, 0, 260, 500)});
  const double res = 1.25;

  CHECK(segment_free(env, vec({100, 100, 0}), vec({100, 100, 0}), res));
  CHECK_FALSE(segment_free(env, vec({100, 250, 0}), vec({400, 250, 0}), res));  // through wall
  CHECK(segment_free(env, vec({100, 100, 0}), vec({200, 400, 1.0}), res));
  CHECK_THROWS_AS(segment_free(env, vec({100, 100, 0}), vec({200, 400, 0}), 0.0),
                  ContractViolation);

  // symmetry
  RngStream rng(3);
  for (int i = 0; i < 100; ++i) {
    const Configuration a =
        vec({rng.uniform(10, 490), rng.uniform(10, 490), rng.uniform(0, 2 * M_PI)});
    const Configuration b =
        vec({rng.uniform(10, 490), rng.uniform(10, 490), rng.uniform(0, 2 * M_PI)});
    REQUIRE(segment_free(env, a, b, res) == segment_free(env, b, a, res));
  }
}

TEST_CASE("finer resolution never flips a blocked segment to free") {
  const Environment env = make_env2({box2(240, 200, 260, 300)});
  RngStream rng(11);
  int blocked = 0;
  for (int i = 0; i < 200; ++i) {
    const Configuration a = vec({rng.uniform(10, 490), rng.uniform(10, 490), 0});
    const Configuration b = vec({rng.uniform(10, 490), rng.uniform(10, 490), 0});
    const bool coarse = segment_free(env, a, b, 2.0);
    const bool fine = segment_free(env, a, b, 1.0);
    const bool finer = segment_free(env, a, b, 0.5);
    if (!coarse) {
      ++blocked;
      REQUIRE_FALSE(fine);
    }
    if (!fine) REQUIRE_FALSE(finer);
  }
  CHECK(blocked > 0);

  // a tangent near-miss keeps its verdict under refinement
  const Configuration lo = vec({100, 194.9, 0});
  const Configuration hi = vec({400, 194.9, 0});
  CHECK(segment_free(env, lo, hi, 2.0) == segment_free(env, lo, hi, 1.0));
  const Configuration graze_a = vec({100, 195.2, 0});
  const Configuration graze_b = vec({400, 195.2, 0});
  CHECK(segment_free(env, graze_a, graze_b, 2.0) == segment_free(env, graze_a, graze_b, 1.0));
}

TEST_CASE("goal box membership") {
  const Environment env = make_env2({});
  CHECK(in_goal(env, vec({485, 485, 2.0})));          // center
  CHECK(in_goal(env, vec({480, 480, 0})));            // boundary is closed
  CHECK(in_goal(env, vec({490, 490, 0})));
  CHECK_FALSE(in_goal(env, vec({490.001, 485, 0})));  // just outside
  CHECK_FALSE(in_goal(env, vec({250, 250, 0})));
}

TEST_CASE("environment json round trip") {
  const std::string text = R"({
    "workspace_dim": 2,
    "bounds": {"min": [0, 0], "max": [500, 500]},
    "obstacles": [{"min": [240, 0], "max": [260, 420]}],
    "robot": {"half_extents": [5, 5], "rotatable": true},
    "start": [50, 250, 0],
    "goal_box": {"min": [445, 245], "max": [455, 255]},
    "rotation_weight": 7.0
  })";
  const Environment env = Environment::from_json_text(text, "wall_test");
  CHECK(env.workspace_dim() == 2);
  CHECK(env.space().dim() == 3);
  CHECK(env.space().rotation_weight() == 7.0);
  CHECK(env.obstacles().size() == 1);
  CHECK(env.name() == "wall_test");
  CHECK(is_free(env, env.start()));

  CHECK_THROWS_AS(Environment::from_json_text("{not json", "bad"), ConfigError);
  CHECK_THROWS_AS(Environment::from_json_text("{}", "empty"), ConfigError);

  // default rotation weight falls back to the robot circumradius
  const std::string no_weight = R"({
    "workspace_dim": 2,
    "bounds": {"min": [0, 0], "max": [100, 100]},
    "obstacles": [],
    "robot": {"half_extents": [3, 4], "rotatable": true},
    "start": [50, 50, 0],
    "goal_box": {"min": [90, 90], "max": [95, 95]}
  })";
  const Environment env2 = Environment::from_json_text(no_weight, "plain");
  CHECK(env2.space().rotation_weight() == doctest::Approx(5.0));
}
