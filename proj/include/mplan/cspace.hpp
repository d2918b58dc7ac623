#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

namespace mplan {

using Configuration = Eigen::VectorXd;

/// Bounded configuration space mixing translation and rotation coordinates.
/// The metric is a weighted Euclidean norm: rotation coordinates are scaled
/// by rotation_weight, so all geometry (spheroids, axis projections, hulls)
/// is plain Euclidean geometry in the scaled coordinates.
class ConfigSpace {
 public:
  ConfigSpace(Eigen::VectorXd lower, Eigen::VectorXd upper,
              std::vector<bool> rotation_mask = {}, double rotation_weight = 1.0);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  const std::vector<bool>& rotation_mask() const { return rotation_mask_; }
  double rotation_weight() const { return rotation_weight_; }

  /// Per-coordinate metric scaling factors (1 for translation, rotation_weight
  /// for rotation coordinates).
  const Eigen::VectorXd& weights() const { return weights_; }

  bool contains(const Configuration& q) const;

  /// Map to/from the metric-scaled coordinates in which the metric is the
  /// plain Euclidean norm.
  Eigen::VectorXd to_metric(const Configuration& q) const { return q.cwiseProduct(weights_); }
  Configuration from_metric(const Eigen::VectorXd& x) const { return x.cwiseQuotient(weights_); }

  /// Lebesgue measure of the space in metric-scaled coordinates.
  double measure() const;

 private:
  Eigen::VectorXd lower_, upper_;
  std::vector<bool> rotation_mask_;
  double rotation_weight_;
  Eigen::VectorXd weights_;
};

double metric_distance(const ConfigSpace& space, const Configuration& q1,
                       const Configuration& q2);

/// Ordered sequence of configurations. A single-point path has length 0.
struct Path {
  std::vector<Configuration> points;

  Path() = default;
  explicit Path(std::vector<Configuration> pts) : points(std::move(pts)) {}

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  const Configuration& front() const { return points.front(); }
  const Configuration& back() const { return points.back(); }
  const Configuration& operator[](std::size_t i) const { return points[i]; }
};

double path_length(const ConfigSpace& space, const Path& path);

/// Points j..k of `path`, inclusive, 0-based. Requires j < k < path.size().
Path subpath(const Path& path, std::size_t j, std::size_t k);

/// A point of the 2D slice plane: distance along the SG-axis and distance
/// from it. Both are metric distances, so f >= 0 always.
struct SlicePoint {
  double a = 0.0;
  double f = 0.0;
};

/// Frame of the SG-axis (the line through the path's endpoints) expressed in
/// metric-scaled coordinates. `origin` is the projection of the path point
/// with the minimum scalar projection, so every path point projects to
/// a-values in [0, extent].
struct AxisFrame {
  Eigen::VectorXd weights;    // metric scaling used to build the frame
  Eigen::VectorXd origin;     // metric-space o
  Eigen::VectorXd direction;  // metric-space unit vector from p_1 toward p_n
  double extent = 0.0;        // distance from o to the last projection t

  int dim() const { return static_cast<int>(origin.size()); }
};

AxisFrame build_axis_frame(const ConfigSpace& space, const Path& path);

/// Frame over raw coordinates (unit weights); used when no space is at hand.
AxisFrame build_axis_frame(const Path& path);

/// Axial/radial decomposition of q relative to the SG-axis.
SlicePoint transf(const AxisFrame& frame, const Configuration& q);

}  // namespace mplan
