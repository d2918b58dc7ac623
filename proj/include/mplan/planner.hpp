#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "mplan/collision.hpp"
#include "mplan/cspace.hpp"
#include "mplan/kdtree.hpp"
#include "mplan/rng.hpp"
#include "mplan/sampling.hpp"

namespace mplan {

/// Search tree of the planner: append-only nodes with parent links and
/// cost-to-come, indexed for nearest/near queries under the space metric.
class Tree {
 public:
  struct Node {
    Configuration config;
    int parent;   // -1 for the root
    double cost;  // cost-to-come from the root
  };

  explicit Tree(const ConfigSpace& space) : space_(&space), index_(space.dim()) {}

  int add_node(const Configuration& q, int parent, double cost);
  void set_parent(int id, int new_parent, double new_cost);

  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<int>& children(int id) const { return children_[static_cast<std::size_t>(id)]; }
  int size() const { return static_cast<int>(nodes_.size()); }

  int nearest(const Configuration& q) const { return index_.nearest(space_->to_metric(q)); }
  void near_radius(const Configuration& q, double radius, std::vector<int>& out) const {
    index_.radius_search(space_->to_metric(q), radius, out);
  }
  void near_k(const Configuration& q, int k, std::vector<int>& out) const {
    index_.k_nearest(space_->to_metric(q), k, out);
  }

  /// Root-to-id configuration sequence.
  Path path_to(int id) const;

  /// Adjusts stored costs of the subtree under `id` by `delta` (after a
  /// reparenting that changed id's cost).
  void propagate_cost_delta(int id, double delta);

 private:
  const ConfigSpace* space_;
  std::vector<Node> nodes_;
  std::vector<std::vector<int>> children_;
  KdTree index_;
};

struct PlannerParams {
  int max_iterations = 20000;
  double eta = 25.0;            // steer step
  double gamma = 0.0;           // near-radius constant; 0 derives the RRT* default
  bool use_knn = false;         // k-nearest neighbourhood instead of radius
  double goal_bias = 0.05;      // pre-solution probability of sampling the goal box
  int c = 5;                    // minimum subpath cardinality for local sampling
  int hull_rebuild_period = 1000;
  double epsilon = 1e-5;        // informed-mixing probability for convex samplers
  double edge_resolution = 0.0; // 0 derives min(robot half extent) / 4
  std::uint64_t seed = 1;
  double time_budget_ms = 0.0;  // 0 disables the wall-clock stop
  int audit_period = 0;         // >0 verifies tree cost consistency every N iterations

  /// Diagnostics hook invoked for every drawn sample (tests).
  struct SampleEvent {
    const Configuration& config;
    SamplerKind requested;
    bool informed_substitute;  // epsilon-mix or error fallback draw
    const Path* best_path;     // nullptr before the first solution
    const Slice* slice;        // nullptr unless a convex sampler holds one
    int iteration;
  };
  std::function<void(const SampleEvent&)> on_sample;
  bool keep_tree = false;
};

struct HistoryEntry {
  int iteration;
  double elapsed_ms;
  double cost;
};

struct PlanResult {
  std::optional<Path> best_path;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<HistoryEntry> history;  // one entry per improvement
  std::optional<int> first_solution_iteration;
  int iterations_run = 0;
  int fallback_draws = 0;  // sampler failures replaced by an informed draw
  int audit_failures = 0;
  std::vector<Tree::Node> tree;  // populated when params.keep_tree
};

/// One RRT* search instance. Single-threaded; create one per trial.
class Planner {
 public:
  Planner(const Environment& env, SamplerKind kind, PlannerParams params);

  PlanResult run();

  // Exposed planner primitives (driven by run(); public for tests/tools).
  std::optional<int> extend(const Configuration& q_rand);
  int rewire(int new_id);

  Tree& tree() { return tree_; }
  const Environment& env() const { return *env_; }
  double near_radius(int tree_size) const;
  double edge_resolution() const { return resolution_; }

 private:
  Configuration draw_sample(int iteration);
  Configuration informed_draw();
  void neighbourhood(const Configuration& q, std::vector<int>& out) const;
  bool update_best(int iteration);
  void note_sample(const Configuration& q, bool substitute, int iteration);
  bool audit_costs() const;

  const Environment* env_;
  const ConfigSpace* space_;
  SamplerKind kind_;
  PlannerParams params_;
  RngStream rng_;
  Tree tree_;
  double gamma_;
  double resolution_;

  std::vector<int> goal_nodes_;
  std::optional<Path> best_path_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  std::optional<Slice> slice_;
  std::optional<ProlateSpheroid> informed_set_;
  int iterations_since_rebuild_ = 0;
  PlanResult result_;
  std::vector<int> near_buffer_;
};

/// Convenience wrapper: construct a planner and run it.
PlanResult plan(const Environment& env, SamplerKind kind, const PlannerParams& params);

/// Cheapest root-to-goal-region path in the tree, if any goal node exists.
std::optional<Path> track_best(const Tree& tree, const Environment& env);

}  // namespace mplan
