#include "mplan/collision.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mplan/errors.hpp"

namespace mplan {

using json = nlohmann::json;

namespace {

int config_dim(int workspace_dim, bool rotatable) {
  if (!rotatable) return workspace_dim;
  return workspace_dim == 2 ? 3 : 6;
}

ConfigSpace derive_space(int workspace_dim, const Aabb& bounds, bool rotatable,
                         double rotation_weight) {
  if (workspace_dim != 2 && workspace_dim != 3)
    throw ConfigError("workspace_dim must be 2 or 3");
  if (bounds.min.size() != workspace_dim || bounds.max.size() != workspace_dim)
    throw ConfigError("workspace bounds dimension mismatch");
  const int dim = config_dim(workspace_dim, rotatable);
  Eigen::VectorXd lower(dim), upper(dim);
  std::vector<bool> mask(static_cast<std::size_t>(dim), false);
  for (int i = 0; i < workspace_dim; ++i) {
    lower[i] = bounds.min[i];
    upper[i] = bounds.max[i];
  }
  for (int i = workspace_dim; i < dim; ++i) {
    lower[i] = 0.0;
    upper[i] = 2.0 * M_PI;
    mask[static_cast<std::size_t>(i)] = true;
  }
  return ConfigSpace(lower, upper, mask, rotatable ? rotation_weight : 1.0);
}

Eigen::Matrix2d rotation2(double angle) {
  Eigen::Matrix2d r;
  const double c = std::cos(angle), s = std::sin(angle);
  r << c, -s, s, c;
  return r;
}

Eigen::Matrix3d rotation_zyx(double yaw, double pitch, double roll) {
  return (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

Eigen::VectorXd parse_vector(const json& node, int expected, const std::string& what) {
  if (!node.is_array() || static_cast<int>(node.size()) != expected)
    throw ConfigError(what + ": expected array of " + std::to_string(expected) + " numbers");
  Eigen::VectorXd v(expected);
  for (int i = 0; i < expected; ++i) v[i] = node[static_cast<std::size_t>(i)].get<double>();
  return v;
}

Aabb parse_box(const json& node, int dim, const std::string& what) {
  if (!node.is_object() || !node.contains("min") || !node.contains("max"))
    throw ConfigError(what + ": expected object with min/max arrays");
  return {parse_vector(node["min"], dim, what + ".min"), parse_vector(node["max"], dim, what + ".max")};
}

}  // namespace

Environment::Environment(int workspace_dim, Aabb bounds, std::vector<Aabb> obstacles,
                         Eigen::VectorXd robot_half_extents, bool rotatable,
                         Configuration start, Aabb goal_box, double rotation_weight,
                         std::string name)
    : workspace_dim_(workspace_dim),
      bounds_(std::move(bounds)),
      obstacles_(std::move(obstacles)),
      robot_half_extents_(std::move(robot_half_extents)),
      rotatable_(rotatable),
      start_(std::move(start)),
      goal_box_(std::move(goal_box)),
      name_(std::move(name)),
      space_(derive_space(workspace_dim, bounds_, rotatable,
                          rotation_weight > 0.0 ? rotation_weight : robot_half_extents_.norm())) {
  if (workspace_dim_ != 2 && workspace_dim_ != 3)
    throw ConfigError(name_ + ": workspace_dim must be 2 or 3");
  for (int i = 0; i < workspace_dim_; ++i) {
    if (!(bounds_.min[i] < bounds_.max[i]))
      throw ConfigError(name_ + ": workspace bounds min must be below max");
    if (!(robot_half_extents_[i] > 0.0)) throw ConfigError(name_ + ": robot extents must be positive");
  }
  for (const auto& obs : obstacles_)
    for (int i = 0; i < workspace_dim_; ++i)
      if (!(obs.min[i] < obs.max[i])) throw ConfigError(name_ + ": obstacle min must be below max");
  for (int i = 0; i < workspace_dim_; ++i)
    if (goal_box_.min[i] < bounds_.min[i] || goal_box_.max[i] > bounds_.max[i])
      throw ConfigError(name_ + ": goal box must lie within the workspace bounds");
  if (start_.size() != space_.dim()) throw ConfigError(name_ + ": start dimension mismatch");
  if (!is_free(*this, start_)) throw ConfigError(name_ + ": start configuration is not collision-free");
}

Environment Environment::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open environment file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string name = path;
  if (const auto slash = name.find_last_of('/'); slash != std::string::npos)
    name = name.substr(slash + 1);
  if (const auto dot = name.find_last_of('.'); dot != std::string::npos) name = name.substr(0, dot);
  return from_json_text(buffer.str(), name);
}

Environment Environment::from_json_text(const std::string& text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(name + ": " + e.what());
  }
  try {
    const int wdim = doc.at("workspace_dim").get<int>();
    if (wdim != 2 && wdim != 3) throw ConfigError(name + ": workspace_dim must be 2 or 3");
    Aabb bounds = parse_box(doc.at("bounds"), wdim, "bounds");
    std::vector<Aabb> obstacles;
    if (doc.contains("obstacles")) {
      const json& arr = doc["obstacles"];
      if (!arr.is_array()) throw ConfigError(name + ": obstacles must be an array");
      for (std::size_t i = 0; i < arr.size(); ++i)
        obstacles.push_back(parse_box(arr[i], wdim, "obstacles[" + std::to_string(i) + "]"));
    }
    const json& robot = doc.at("robot");
    Eigen::VectorXd half = parse_vector(robot.at("half_extents"), wdim, "robot.half_extents");
    const bool rotatable = robot.value("rotatable", true);
    const int cdim = config_dim(wdim, rotatable);
    Configuration start = parse_vector(doc.at("start"), cdim, "start");
    Aabb goal = parse_box(doc.at("goal_box"), wdim, "goal_box");
    const double rot_weight = doc.value("rotation_weight", 0.0);
    return Environment(wdim, std::move(bounds), std::move(obstacles), std::move(half), rotatable,
                       std::move(start), std::move(goal), rot_weight, name);
  } catch (const json::exception& e) {
    throw ConfigError(name + ": " + e.what());
  }
}

RobotPose Environment::pose_from_config(const Configuration& q) const {
  RobotPose pose;
  pose.translation = q.head(workspace_dim_);
  if (!rotatable_) {
    pose.rotation = Eigen::MatrixXd::Identity(workspace_dim_, workspace_dim_);
  } else if (workspace_dim_ == 2) {
    pose.rotation = rotation2(q[2]);
  } else {
    pose.rotation = rotation_zyx(q[3], q[4], q[5]);
  }
  return pose;
}

Configuration Environment::goal_center_config() const {
  Configuration q = start_;
  q.head(workspace_dim_) = goal_box_.center();
  return q;
}

bool obb_aabb_overlap(const Eigen::VectorXd& center, const Eigen::VectorXd& half,
                      const Eigen::MatrixXd& rot, const Aabb& box) {
  const int dim = static_cast<int>(center.size());
  const Eigen::VectorXd t = box.center() - center;
  const Eigen::VectorXd bh = box.half_extents();

  auto separated_on = [&](const Eigen::VectorXd& axis) {
    const double len = axis.norm();
    if (len < 1e-9) return false;  // degenerate cross product
    const Eigen::VectorXd u = axis / len;
    double r_obb = 0.0;
    for (int j = 0; j < dim; ++j) r_obb += std::abs(u.dot(rot.col(j))) * half[j];
    double r_box = 0.0;
    for (int j = 0; j < dim; ++j) r_box += std::abs(u[j]) * bh[j];
    return std::abs(u.dot(t)) > r_obb + r_box;
  };

  for (int i = 0; i < dim; ++i) {
    if (separated_on(Eigen::VectorXd::Unit(dim, i))) return false;
    if (separated_on(rot.col(i))) return false;
  }
  if (dim == 3) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Eigen::Vector3d axis =
            Eigen::Vector3d::Unit(i).cross(Eigen::Vector3d(rot.col(j)));
        if (separated_on(axis)) return false;
      }
  }
  return true;
}

bool is_free(const Environment& env, const Configuration& q) {
  const RobotPose pose = env.pose_from_config(q);
  const int dim = env.workspace_dim();

  // World-aligned extent of the oriented robot box.
  Eigen::VectorXd ext(dim);
  for (int i = 0; i < dim; ++i) {
    double e = 0.0;
    for (int j = 0; j < dim; ++j) e += std::abs(pose.rotation(i, j)) * env.robot_half_extents()[j];
    ext[i] = e;
  }
  for (int i = 0; i < dim; ++i) {
    if (pose.translation[i] - ext[i] < env.bounds().min[i]) return false;
    if (pose.translation[i] + ext[i] > env.bounds().max[i]) return false;
  }

  for (const auto& obs : env.obstacles())
    if (obb_aabb_overlap(pose.translation, env.robot_half_extents(), pose.rotation, obs))
      return false;
  return true;
}

bool segment_free(const Environment& env, const Configuration& q1, const Configuration& q2,
                  double resolution) {
  if (resolution <= 0.0) throw ContractViolation("segment_free: resolution must be positive");
  const double dist = metric_distance(env.space(), q1, q2);
  std::size_t steps = 1;
  while (steps * resolution < dist && steps < (1u << 30)) steps *= 2;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps);
    if (!is_free(env, q1 + t * (q2 - q1))) return false;
  }
  return true;
}

bool in_goal(const Environment& env, const Configuration& q) {
  return env.goal_box().contains(q.head(env.workspace_dim()));
}

}  // namespace mplan
