#include "mplan/kdtree.hpp"

#include <algorithm>
#include <limits>

namespace mplan {

void KdTree::insert(const Eigen::VectorXd& point, int id) {
  if (nodes_.empty()) {
    nodes_.push_back({point, id, 0});
    return;
  }
  int index = 0;
  while (true) {
    Node& node = nodes_[static_cast<std::size_t>(index)];
    const int axis = node.axis;
    int& child = point[axis] < node.point[axis] ? node.left : node.right;
    if (child < 0) {
      const int next = static_cast<int>(nodes_.size());
      child = next;
      nodes_.push_back({point, id, (axis + 1) % dim_});
      return;
    }
    index = child;
  }
}

int KdTree::nearest(const Eigen::VectorXd& query) const {
  if (nodes_.empty()) return -1;
  double best_sq = std::numeric_limits<double>::infinity();
  int best_id = -1;
  nearest_rec(0, query, best_sq, best_id);
  return best_id;
}

void KdTree::nearest_rec(int index, const Eigen::VectorXd& query, double& best_sq,
                         int& best_id) const {
  const Node& node = nodes_[static_cast<std::size_t>(index)];
  const double d_sq = (node.point - query).squaredNorm();
  if (d_sq < best_sq) {
    best_sq = d_sq;
    best_id = node.id;
  }
  const double plane = query[node.axis] - node.point[node.axis];
  const int near_child = plane < 0.0 ? node.left : node.right;
  const int far_child = plane < 0.0 ? node.right : node.left;
  if (near_child >= 0) nearest_rec(near_child, query, best_sq, best_id);
  if (far_child >= 0 && plane * plane < best_sq) nearest_rec(far_child, query, best_sq, best_id);
}

void KdTree::radius_search(const Eigen::VectorXd& query, double radius,
                           std::vector<int>& out) const {
  out.clear();
  if (!nodes_.empty()) radius_rec(0, query, radius * radius, out);
}

void KdTree::radius_rec(int index, const Eigen::VectorXd& query, double radius_sq,
                        std::vector<int>& out) const {
  const Node& node = nodes_[static_cast<std::size_t>(index)];
  if ((node.point - query).squaredNorm() <= radius_sq) out.push_back(node.id);
  const double plane = query[node.axis] - node.point[node.axis];
  const int near_child = plane < 0.0 ? node.left : node.right;
  const int far_child = plane < 0.0 ? node.right : node.left;
  if (near_child >= 0) radius_rec(near_child, query, radius_sq, out);
  if (far_child >= 0 && plane * plane <= radius_sq) radius_rec(far_child, query, radius_sq, out);
}

void KdTree::k_nearest(const Eigen::VectorXd& query, int k, std::vector<int>& out) const {
  out.clear();
  if (nodes_.empty() || k <= 0) return;
  std::vector<std::pair<double, int>> heap;  // max-heap on squared distance
  heap.reserve(static_cast<std::size_t>(k) + 1);
  knearest_rec(0, query, k, heap);
  std::sort_heap(heap.begin(), heap.end());
  for (const auto& [d_sq, id] : heap) out.push_back(id);
}

void KdTree::knearest_rec(int index, const Eigen::VectorXd& query, int k,
                          std::vector<std::pair<double, int>>& heap) const {
  const Node& node = nodes_[static_cast<std::size_t>(index)];
  const double d_sq = (node.point - query).squaredNorm();
  if (static_cast<int>(heap.size()) < k) {
    heap.emplace_back(d_sq, node.id);
    std::push_heap(heap.begin(), heap.end());
  } else if (d_sq < heap.front().first) {
    std::pop_heap(heap.begin(), heap.end());
    heap.back() = {d_sq, node.id};
    std::push_heap(heap.begin(), heap.end());
  }
  const double plane = query[node.axis] - node.point[node.axis];
  const int near_child = plane < 0.0 ? node.left : node.right;
  const int far_child = plane < 0.0 ? node.right : node.left;
  if (near_child >= 0) knearest_rec(near_child, query, k, heap);
  const bool full = static_cast<int>(heap.size()) >= k;
  if (far_child >= 0 && (!full || plane * plane < heap.front().first))
    knearest_rec(far_child, query, k, heap);
}

}  // namespace mplan
