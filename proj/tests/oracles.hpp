// Independent brute-force oracles used by the unit and acceptance suites.
// These deliberately avoid the library's hull/membership code paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "mplan/cspace.hpp"
#include "mplan/rng.hpp"

namespace oracles {

struct Pt2 {
  double x, y;
};

/// Strictly-inside-triangle test via signed areas (no tolerance).
inline bool strictly_inside_triangle(const Pt2& p, const Pt2& a, const Pt2& b, const Pt2& c) {
  auto cross = [](const Pt2& o, const Pt2& u, const Pt2& v) {
    return (u.x - o.x) * (v.y - o.y) - (u.y - o.y) * (v.x - o.x);
  };
  const double d1 = cross(a, b, p);
  const double d2 = cross(b, c, p);
  const double d3 = cross(c, a, p);
  return (d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0);
}

/// Non-strict point-on-segment test (within eps of the segment).
inline bool on_segment(const Pt2& p, const Pt2& a, const Pt2& b, double eps = 1e-12) {
  const double abx = b.x - a.x, aby = b.y - a.y;
  const double apx = p.x - a.x, apy = p.y - a.y;
  const double cross = abx * apy - aby * apx;
  const double len = std::hypot(abx, aby);
  if (len < eps) return std::hypot(apx, apy) <= eps;
  if (std::abs(cross) / len > eps) return false;
  const double t = (apx * abx + apy * aby) / (len * len);
  return t >= -eps && t <= 1.0 + eps;
}

/// Extremal points of the 2D convex hull by exhaustion: a point is a hull
/// vertex iff it is not strictly inside any triangle of other points and not
/// on the segment between two other points. Duplicates are collapsed first.
/// O(m^3) per candidate; fine for the path sizes under test.
inline std::vector<Pt2> hull_vertices_bruteforce(std::vector<Pt2> pts) {
  // collapse exact duplicates
  std::sort(pts.begin(), pts.end(), [](const Pt2& l, const Pt2& r) {
    return l.x < r.x || (l.x == r.x && l.y < r.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Pt2& l, const Pt2& r) { return l.x == r.x && l.y == r.y; }),
            pts.end());

  std::vector<Pt2> vertices;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool interior = false;
    for (std::size_t a = 0; a < pts.size() && !interior; ++a) {
      if (a == i) continue;
      // on an edge between two other points -> not a vertex
      for (std::size_t b = a + 1; b < pts.size() && !interior; ++b) {
        if (b == i) continue;
        if (on_segment(pts[i], pts[a], pts[b])) interior = true;
      }
      for (std::size_t b = a + 1; b < pts.size() && !interior; ++b) {
        if (b == i) continue;
        for (std::size_t c = b + 1; c < pts.size() && !interior; ++c) {
          if (c == i) continue;
          if (strictly_inside_triangle(pts[i], pts[a], pts[b], pts[c])) interior = true;
        }
      }
    }
    if (!interior) vertices.push_back(pts[i]);
  }
  return vertices;
}

/// Half-plane membership in the convex polygon with vertex chain `upper`
/// (ascending x, first/last on the x-axis) closed by the axis segment.
/// Boundary inclusive within tol.
inline bool inside_upper_polygon(const std::vector<Pt2>& upper, const Pt2& p, double tol = 1e-9) {
  if (p.y < -tol) return false;
  if (p.x < upper.front().x - tol || p.x > upper.back().x + tol) return false;
  // Inside iff on the inner side of every chain edge (the polygon is convex,
  // traversed left to right along the top, axis below).
  for (std::size_t i = 0; i + 1 < upper.size(); ++i) {
    const Pt2& a = upper[i];
    const Pt2& b = upper[i + 1];
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (len > 0 && cross / len > tol) return false;  // above the edge
  }
  return true;
}

/// Membership in some local hyperellipsoid of cardinality >= c, by scanning
/// all O(n^2) subpaths directly against the two-focal-radii inequality.
inline bool in_some_local_spheroid(const mplan::ConfigSpace& space, const mplan::Path& path,
                                   int c, const mplan::Configuration& q, double tol = 1e-9) {
  const auto n = path.size();
  for (std::size_t j = 0; j < n; ++j) {
    double len = 0.0;
    for (std::size_t k = j + 1; k < n; ++k) {
      len += metric_distance(space, path[k - 1], path[k]);
      if (static_cast<int>(k - j + 1) < c) continue;
      const double sum =
          metric_distance(space, q, path[j]) + metric_distance(space, q, path[k]);
      if (sum <= len + tol) return true;
    }
  }
  return false;
}

/// Random path generator for geometry property tests.
inline mplan::Path random_path(const mplan::ConfigSpace& space, int n_points,
                               mplan::RngStream& rng) {
  std::vector<mplan::Configuration> pts;
  while (true) {
    pts.clear();
    for (int i = 0; i < n_points; ++i) {
      mplan::Configuration q(space.dim());
      for (int d = 0; d < space.dim(); ++d)
        q[d] = rng.uniform(space.lower()[d], space.upper()[d]);
      pts.push_back(q);
    }
    if (mplan::metric_distance(space, pts.front(), pts.back()) > 1e-6) break;
  }
  return mplan::Path(pts);
}

}  // namespace oracles
