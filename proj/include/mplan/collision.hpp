#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <string>
#include <vector>

#include "mplan/cspace.hpp"

namespace mplan {

/// Axis-aligned box in workspace coordinates.
struct Aabb {
  Eigen::VectorXd min, max;

  bool contains(const Eigen::VectorXd& p) const {
    for (int i = 0; i < p.size(); ++i)
      if (p[i] < min[i] || p[i] > max[i]) return false;
    return true;
  }
  Eigen::VectorXd center() const { return 0.5 * (min + max); }
  Eigen::VectorXd half_extents() const { return 0.5 * (max - min); }
};

/// Workspace placement of the rigid robot box derived from a configuration:
/// translation coordinates first, then the rotation angle (2D) or Z-Y-X Euler
/// angles (3D).
struct RobotPose {
  Eigen::VectorXd translation;  // workspace_dim entries
  Eigen::MatrixXd rotation;     // workspace_dim x workspace_dim
};

/// Planning scene: bounded 2D or 3D workspace, axis-aligned box obstacles and
/// a rectangle/cuboid robot that may translate and optionally rotate.
class Environment {
 public:
  Environment(int workspace_dim, Aabb bounds, std::vector<Aabb> obstacles,
              Eigen::VectorXd robot_half_extents, bool rotatable, Configuration start,
              Aabb goal_box, double rotation_weight = 0.0, std::string name = "env");

  static Environment from_json_file(const std::string& path);
  static Environment from_json_text(const std::string& text, const std::string& name);

  int workspace_dim() const { return workspace_dim_; }
  const Aabb& bounds() const { return bounds_; }
  const std::vector<Aabb>& obstacles() const { return obstacles_; }
  const Eigen::VectorXd& robot_half_extents() const { return robot_half_extents_; }
  bool rotatable() const { return rotatable_; }
  const Configuration& start() const { return start_; }
  const Aabb& goal_box() const { return goal_box_; }
  const std::string& name() const { return name_; }
  const ConfigSpace& space() const { return space_; }

  RobotPose pose_from_config(const Configuration& q) const;

  /// Configuration whose translation part is the goal box center (rotation
  /// coordinates copied from the start); used for reporting only.
  Configuration goal_center_config() const;

 private:
  int workspace_dim_;
  Aabb bounds_;
  std::vector<Aabb> obstacles_;
  Eigen::VectorXd robot_half_extents_;
  bool rotatable_;
  Configuration start_;
  Aabb goal_box_;
  std::string name_;
  ConfigSpace space_;
};

/// True iff the posed robot box is inside the workspace bounds and intersects
/// no obstacle (separating-axis tests; touching counts as collision).
bool is_free(const Environment& env, const Configuration& q);

/// Collision check of the straight segment q1 -> q2 at interpolation spacing
/// of at most `resolution` in metric distance, endpoints included. The number
/// of interpolation steps is rounded up to a power of two so that halving the
/// resolution only refines the checked set.
bool segment_free(const Environment& env, const Configuration& q1, const Configuration& q2,
                  double resolution);

/// True iff the translation coordinates of q lie inside the goal box (closed).
bool in_goal(const Environment& env, const Configuration& q);

/// Oriented-box vs axis-aligned-box overlap via the separating axis theorem.
/// Exposed for tests; `rot` maps body axes to world axes.
bool obb_aabb_overlap(const Eigen::VectorXd& center, const Eigen::VectorXd& half,
                      const Eigen::MatrixXd& rot, const Aabb& box);

}  // namespace mplan
