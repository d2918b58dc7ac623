#pragma once

#include <Eigen/Core>
#include <vector>

namespace mplan {

/// Incremental kd-tree over fixed-dimension points, used for nearest /
/// radius / k-nearest queries on the planner tree. Points are expected in
/// metric-scaled coordinates so plain Euclidean distance applies. No
/// rebalancing; randomized insertion order keeps the expected depth
/// logarithmic.
class KdTree {
 public:
  explicit KdTree(int dim) : dim_(dim) {}

  int size() const { return static_cast<int>(nodes_.size()); }

  void insert(const Eigen::VectorXd& point, int id);

  /// Id of the closest stored point, or -1 when empty.
  int nearest(const Eigen::VectorXd& query) const;

  /// Ids of all points within `radius` of the query (unordered).
  void radius_search(const Eigen::VectorXd& query, double radius, std::vector<int>& out) const;

  /// Ids of the k closest points, closest first.
  void k_nearest(const Eigen::VectorXd& query, int k, std::vector<int>& out) const;

 private:
  struct Node {
    Eigen::VectorXd point;
    int id;
    int axis;
    int left = -1;
    int right = -1;
  };

  void nearest_rec(int index, const Eigen::VectorXd& query, double& best_sq, int& best_id) const;
  void radius_rec(int index, const Eigen::VectorXd& query, double radius_sq,
                  std::vector<int>& out) const;
  void knearest_rec(int index, const Eigen::VectorXd& query, int k,
                    std::vector<std::pair<double, int>>& heap) const;

  int dim_;
  std::vector<Node> nodes_;
};

}  // namespace mplan
