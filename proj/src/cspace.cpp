#include "mplan/cspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mplan/errors.hpp"

namespace mplan {

ConfigSpace::ConfigSpace(Eigen::VectorXd lower, Eigen::VectorXd upper,
                         std::vector<bool> rotation_mask, double rotation_weight)
    : lower_(std::move(lower)),
      upper_(std::move(upper)),
      rotation_mask_(std::move(rotation_mask)),
      rotation_weight_(rotation_weight) {
  if (lower_.size() == 0 || lower_.size() != upper_.size())
    throw ContractViolation("ConfigSpace: bounds must be nonempty and of equal dimension");
  if (rotation_mask_.empty()) rotation_mask_.assign(static_cast<std::size_t>(lower_.size()), false);
  if (rotation_mask_.size() != static_cast<std::size_t>(lower_.size()))
    throw ContractViolation("ConfigSpace: rotation mask dimension mismatch");
  for (int i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i]))
      throw ContractViolation("ConfigSpace: lower bound must be below upper bound");
  }
  const bool any_rotation =
      std::any_of(rotation_mask_.begin(), rotation_mask_.end(), [](bool b) { return b; });
  if (any_rotation && !(rotation_weight_ > 0.0))
    throw ContractViolation("ConfigSpace: rotation_weight must be positive with rotation coords");
  weights_.resize(lower_.size());
  for (int i = 0; i < lower_.size(); ++i)
    weights_[i] = rotation_mask_[static_cast<std::size_t>(i)] ? rotation_weight_ : 1.0;
}

bool ConfigSpace::contains(const Configuration& q) const {
  if (q.size() != lower_.size()) return false;
  for (int i = 0; i < q.size(); ++i)
    if (q[i] < lower_[i] || q[i] > upper_[i]) return false;
  return true;
}

double ConfigSpace::measure() const {
  double m = 1.0;
  for (int i = 0; i < lower_.size(); ++i) m *= (upper_[i] - lower_[i]) * weights_[i];
  return m;
}

double metric_distance(const ConfigSpace& space, const Configuration& q1,
                       const Configuration& q2) {
  if (q1.size() != space.dim() || q2.size() != space.dim())
    throw ContractViolation("metric_distance: dimension mismatch");
  return ((q1 - q2).cwiseProduct(space.weights())).norm();
}

double path_length(const ConfigSpace& space, const Path& path) {
  if (path.empty()) throw ContractViolation("path_length: empty path");
  double len = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i)
    len += metric_distance(space, path[i - 1], path[i]);
  return len;
}

Path subpath(const Path& path, std::size_t j, std::size_t k) {
  if (!(j < k && k < path.size()))
    throw ContractViolation("subpath: indices must satisfy j < k < size");
  return Path(std::vector<Configuration>(path.points.begin() + static_cast<std::ptrdiff_t>(j),
                                         path.points.begin() + static_cast<std::ptrdiff_t>(k) + 1));
}

namespace {

AxisFrame build_frame_impl(const Path& path, const Eigen::VectorXd& weights) {
  if (path.size() < 2) throw ContractViolation("build_axis_frame: need at least two points");
  const Eigen::VectorXd first = path.front().cwiseProduct(weights);
  const Eigen::VectorXd last = path.back().cwiseProduct(weights);
  const Eigen::VectorXd span = last - first;
  const double span_norm = span.norm();
  if (span_norm < 1e-12)
    throw DegenerateAxis("build_axis_frame: coincident path endpoints");

  AxisFrame frame;
  frame.weights = weights;
  frame.direction = span / span_norm;

  // Scalar projections of all path points, measured from p_1 along d.
  double smin = std::numeric_limits<double>::infinity();
  double smax = -std::numeric_limits<double>::infinity();
  for (const auto& p : path.points) {
    const double s = (p.cwiseProduct(weights) - first).dot(frame.direction);
    smin = std::min(smin, s);
    smax = std::max(smax, s);
  }
  frame.origin = first + smin * frame.direction;
  frame.extent = smax - smin;
  return frame;
}

}  // namespace

AxisFrame build_axis_frame(const ConfigSpace& space, const Path& path) {
  return build_frame_impl(path, space.weights());
}

AxisFrame build_axis_frame(const Path& path) {
  if (path.empty()) throw ContractViolation("build_axis_frame: empty path");
  return build_frame_impl(path, Eigen::VectorXd::Ones(path.front().size()));
}

SlicePoint transf(const AxisFrame& frame, const Configuration& q) {
  const Eigen::VectorXd rel = q.cwiseProduct(frame.weights) - frame.origin;
  const double a = rel.dot(frame.direction);
  const double f = (rel - a * frame.direction).norm();
  return {a, f};
}

}  // namespace mplan
