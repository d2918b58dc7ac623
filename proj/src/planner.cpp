#include "mplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mplan/errors.hpp"

namespace mplan {

// ---------------------------------------------------------------------------
// Tree

int Tree::add_node(const Configuration& q, int parent, double cost) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({q, parent, cost});
  children_.emplace_back();
  if (parent >= 0) children_[static_cast<std::size_t>(parent)].push_back(id);
  index_.insert(space_->to_metric(q), id);
  return id;
}

void Tree::set_parent(int id, int new_parent, double new_cost) {
  Node& node = nodes_[static_cast<std::size_t>(id)];
  auto& siblings = children_[static_cast<std::size_t>(node.parent)];
  siblings.erase(std::find(siblings.begin(), siblings.end(), id));
  const double delta = new_cost - node.cost;
  node.parent = new_parent;
  node.cost = new_cost;
  children_[static_cast<std::size_t>(new_parent)].push_back(id);
  for (int child : children_[static_cast<std::size_t>(id)]) propagate_cost_delta(child, delta);
}

void Tree::propagate_cost_delta(int id, double delta) {
  nodes_[static_cast<std::size_t>(id)].cost += delta;
  for (int child : children_[static_cast<std::size_t>(id)]) propagate_cost_delta(child, delta);
}

Path Tree::path_to(int id) const {
  std::vector<Configuration> points;
  for (int cur = id; cur >= 0; cur = nodes_[static_cast<std::size_t>(cur)].parent)
    points.push_back(nodes_[static_cast<std::size_t>(cur)].config);
  std::reverse(points.begin(), points.end());
  return Path(std::move(points));
}

std::optional<Path> track_best(const Tree& tree, const Environment& env) {
  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int id = 0; id < tree.size(); ++id) {
    const auto& node = tree.node(id);
    if (node.cost < best_cost && in_goal(env, node.config)) {
      best = id;
      best_cost = node.cost;
    }
  }
  if (best < 0) return std::nullopt;
  return tree.path_to(best);
}

// ---------------------------------------------------------------------------
// Planner

namespace {

double unit_ball_measure(int d) {
  return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double default_gamma(const ConfigSpace& space) {
  const int d = space.dim();
  // RRT* constant with the free-space measure over-approximated by mu(C).
  return 2.0 * std::pow(1.0 + 1.0 / d, 1.0 / d) *
         std::pow(space.measure() / unit_ball_measure(d), 1.0 / d);
}

}  // namespace

Planner::Planner(const Environment& env, SamplerKind kind, PlannerParams params)
    : env_(&env),
      space_(&env.space()),
      kind_(kind),
      params_(std::move(params)),
      rng_(params_.seed),
      tree_(env.space()) {
  if (params_.max_iterations < 1) throw ContractViolation("Planner: max_iterations must be >= 1");
  if (!(params_.eta > 0.0)) throw ContractViolation("Planner: eta must be positive");
  if (params_.hull_rebuild_period < 1)
    throw ContractViolation("Planner: hull_rebuild_period must be >= 1");
  if (params_.c < 2) throw ContractViolation("Planner: c must be >= 2");
  if (params_.epsilon < 0.0 || params_.epsilon > 1.0)
    throw ContractViolation("Planner: epsilon must lie in [0, 1]");
  if (params_.goal_bias < 0.0 || params_.goal_bias > 1.0)
    throw ContractViolation("Planner: goal_bias must lie in [0, 1]");
  gamma_ = params_.gamma > 0.0 ? params_.gamma : default_gamma(*space_);
  resolution_ = params_.edge_resolution > 0.0
                    ? params_.edge_resolution
                    : env.robot_half_extents().minCoeff() / 4.0;
  tree_.add_node(env.start(), -1, 0.0);
}

double Planner::near_radius(int tree_size) const {
  const int d = space_->dim();
  if (tree_size < 2) return params_.eta;
  const double n = static_cast<double>(tree_size);
  return std::min(params_.eta, gamma_ * std::pow(std::log(n) / n, 1.0 / d));
}

void Planner::neighbourhood(const Configuration& q, std::vector<int>& out) const {
  if (params_.use_knn) {
    const int d = space_->dim();
    const double k_rrg = std::exp(1.0) * (1.0 + 1.0 / d);
    const int k = std::max(1, static_cast<int>(std::ceil(k_rrg * std::log(tree_.size() + 1.0))));
    tree_.near_k(q, k, out);
  } else {
    tree_.near_radius(q, near_radius(tree_.size()), out);
  }
}

std::optional<int> Planner::extend(const Configuration& q_rand) {
  const int nearest_id = tree_.nearest(q_rand);
  const Configuration& q_near = tree_.node(nearest_id).config;
  const double dist = metric_distance(*space_, q_near, q_rand);
  if (dist < 1e-12) return std::nullopt;

  Configuration q_new = q_rand;
  if (dist > params_.eta) q_new = q_near + (params_.eta / dist) * (q_rand - q_near);
  if (!is_free(*env_, q_new)) return std::nullopt;

  neighbourhood(q_new, near_buffer_);
  if (std::find(near_buffer_.begin(), near_buffer_.end(), nearest_id) == near_buffer_.end())
    near_buffer_.push_back(nearest_id);

  // Choose-parent: candidates by ascending tentative cost, first valid edge.
  std::vector<std::pair<double, int>> candidates;
  candidates.reserve(near_buffer_.size());
  for (int id : near_buffer_) {
    const auto& node = tree_.node(id);
    candidates.emplace_back(node.cost + metric_distance(*space_, node.config, q_new), id);
  }
  std::sort(candidates.begin(), candidates.end());
  for (const auto& [cost, id] : candidates) {
    if (segment_free(*env_, tree_.node(id).config, q_new, resolution_))
      return tree_.add_node(q_new, id, cost);
  }
  return std::nullopt;
}

int Planner::rewire(int new_id) {
  const auto& new_node = tree_.node(new_id);
  const Configuration q_new = new_node.config;
  const double new_cost = new_node.cost;

  int rewired = 0;
  neighbourhood(q_new, near_buffer_);
  for (int id : near_buffer_) {
    if (id == new_id || id == new_node.parent || id == 0) continue;
    const auto& node = tree_.node(id);
    const double candidate = new_cost + metric_distance(*space_, q_new, node.config);
    if (candidate + 1e-12 >= node.cost) continue;
    if (!segment_free(*env_, q_new, node.config, resolution_)) continue;
    tree_.set_parent(id, new_id, candidate);
    ++rewired;
  }
  return rewired;
}

Configuration Planner::informed_draw() {
  if (!informed_set_ ||
      std::abs(informed_set_->transverse_diameter() - best_cost_) > 1e-12)
    informed_set_.emplace(*space_, best_path_->front(), best_path_->back(), best_cost_);
  return sample_spheroid(*informed_set_, *space_, rng_);
}

void Planner::note_sample(const Configuration& q, bool substitute, int iteration) {
  if (!params_.on_sample) return;
  params_.on_sample({q, kind_, substitute, best_path_ ? &*best_path_ : nullptr,
                     slice_ ? &*slice_ : nullptr, iteration});
}

Configuration Planner::draw_sample(int iteration) {
  if (!best_path_) {
    if (rng_.bernoulli(params_.goal_bias)) {
      Configuration q = sample_uniform(*space_, rng_);
      const auto& box = env_->goal_box();
      for (int i = 0; i < env_->workspace_dim(); ++i) q[i] = rng_.uniform(box.min[i], box.max[i]);
      note_sample(q, false, iteration);
      return q;
    }
    Configuration q = sample_uniform(*space_, rng_);
    note_sample(q, false, iteration);
    return q;
  }

  try {
    switch (kind_) {
      case SamplerKind::Uniform: {
        Configuration q = sample_uniform(*space_, rng_);
        note_sample(q, false, iteration);
        return q;
      }
      case SamplerKind::Informed: {
        Configuration q = informed_draw();
        note_sample(q, false, iteration);
        return q;
      }
      case SamplerKind::LocalInformed: {
        Configuration q = sample_local(*space_, *best_path_, params_.c, rng_);
        note_sample(q, false, iteration);
        return q;
      }
      case SamplerKind::Convex:
      case SamplerKind::LocalConvex: {
        if (rng_.bernoulli(params_.epsilon)) {
          Configuration q = informed_draw();
          note_sample(q, true, iteration);
          return q;
        }
        Configuration q = kind_ == SamplerKind::Convex
                              ? sample_convex_direct(*slice_, *space_, rng_)
                              : sample_combined(*slice_, *space_, *best_path_, params_.c, rng_);
        note_sample(q, false, iteration);
        return q;
      }
    }
  } catch (const SamplingExhausted&) {
  } catch (const DegenerateAxis&) {
  } catch (const InfeasibleSpheroid&) {
  }
  // Any sampler failure yields a single informed draw for this iteration.
  ++result_.fallback_draws;
  Configuration q;
  try {
    q = informed_draw();
  } catch (const SamplingExhausted&) {
    q = sample_uniform(*space_, rng_);
  }
  note_sample(q, true, iteration);
  return q;
}

bool Planner::update_best(int iteration) {
  int best_id = -1;
  double best = best_cost_;
  for (int id : goal_nodes_) {
    const double cost = tree_.node(id).cost;
    if (cost < best - 1e-12) {
      best = cost;
      best_id = id;
    }
  }
  if (best_id < 0) return false;

  const bool first = !best_path_.has_value();
  best_cost_ = best;
  best_path_ = tree_.path_to(best_id);
  if (first) result_.first_solution_iteration = iteration;

  const bool need_slice = kind_ == SamplerKind::Convex || kind_ == SamplerKind::LocalConvex;
  if (need_slice && first) {
    slice_ = build_slice(*space_, *best_path_);
    iterations_since_rebuild_ = 0;
  }
  return true;
}

bool Planner::audit_costs() const {
  for (int id = 1; id < tree_.size(); ++id) {
    const auto& node = tree_.node(id);
    const auto& parent = tree_.node(node.parent);
    const double edge = metric_distance(*space_, parent.config, node.config);
    if (std::abs(parent.cost + edge - node.cost) > 1e-9) return false;
  }
  return true;
}

PlanResult Planner::run() {
  using clock = std::chrono::steady_clock;
  const auto start_time = clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(clock::now() - start_time).count();
  };

  const bool need_slice = kind_ == SamplerKind::Convex || kind_ == SamplerKind::LocalConvex;

  for (int iteration = 1; iteration <= params_.max_iterations; ++iteration) {
    result_.iterations_run = iteration;

    const Configuration q_rand = draw_sample(iteration);
    if (const auto new_id = extend(q_rand)) {
      rewire(*new_id);
      if (in_goal(*env_, tree_.node(*new_id).config)) goal_nodes_.push_back(*new_id);
    }

    if (update_best(iteration))
      result_.history.push_back({iteration, elapsed_ms(), best_cost_});

    if (best_path_ && need_slice) {
      if (++iterations_since_rebuild_ >= params_.hull_rebuild_period) {
        slice_ = build_slice(*space_, *best_path_);
        iterations_since_rebuild_ = 0;
      }
    }

    if (params_.audit_period > 0 && iteration % params_.audit_period == 0 && !audit_costs())
      ++result_.audit_failures;

    if (params_.time_budget_ms > 0.0 && elapsed_ms() >= params_.time_budget_ms) break;
  }

  result_.best_path = best_path_;
  result_.best_cost = best_cost_;
  if (params_.keep_tree) result_.tree = tree_.nodes();
  return result_;
}

PlanResult plan(const Environment& env, SamplerKind kind, const PlannerParams& params) {
  Planner planner(env, kind, params);
  return planner.run();
}

}  // namespace mplan
