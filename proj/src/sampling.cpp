#include "mplan/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mplan/errors.hpp"

namespace mplan {

namespace {
constexpr int kBoundsAttempts = 100;
constexpr int kRejectionAttempts = 10000;
constexpr double kBoundaryTol = 1e-9;
}  // namespace

// ---------------------------------------------------------------------------
// Sampler selection

SamplerKind parse_sampler_kind(const std::string& name) {
  if (name == "uniform") return SamplerKind::Uniform;
  if (name == "informed") return SamplerKind::Informed;
  if (name == "pi") return SamplerKind::LocalInformed;
  if (name == "c") return SamplerKind::Convex;
  if (name == "pic") return SamplerKind::LocalConvex;
  throw ConfigError("unknown sampler '" + name + "' (expected uniform|informed|pi|c|pic)");
}

std::string sampler_kind_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Uniform: return "uniform";
    case SamplerKind::Informed: return "informed";
    case SamplerKind::LocalInformed: return "pi";
    case SamplerKind::Convex: return "c";
    case SamplerKind::LocalConvex: return "pic";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ProlateSpheroid

ProlateSpheroid::ProlateSpheroid(const ConfigSpace& space, Configuration focus1,
                                 Configuration focus2, double c_best)
    : focus1_(std::move(focus1)), focus2_(std::move(focus2)), c_best_(c_best) {
  weights_ = space.weights();
  const Eigen::VectorXd x1 = focus1_.cwiseProduct(weights_);
  const Eigen::VectorXd x2 = focus2_.cwiseProduct(weights_);
  c_min_ = (x2 - x1).norm();
  if (c_best_ < c_min_ - 1e-12)
    throw InfeasibleSpheroid("ProlateSpheroid: transverse diameter below focal distance");

  const int d = space.dim();
  center_m_ = 0.5 * (x1 + x2);
  radii_.resize(d);
  radii_[0] = 0.5 * c_best_;
  const double conjugate = 0.5 * std::sqrt(std::max(0.0, c_best_ * c_best_ - c_min_ * c_min_));
  for (int i = 1; i < d; ++i) radii_[i] = conjugate;

  // Householder reflection mapping e1 onto the transverse axis direction.
  rotation_ = Eigen::MatrixXd::Identity(d, d);
  if (c_min_ > 1e-12) {
    Eigen::VectorXd u = (x2 - x1) / c_min_;
    Eigen::VectorXd v = u;
    v[0] -= 1.0;
    const double vv = v.squaredNorm();
    if (vv > 1e-24) rotation_ -= (2.0 / vv) * (v * v.transpose());
  }
}

bool ProlateSpheroid::contains(const ConfigSpace& space, const Configuration& q,
                               double tol) const {
  return metric_distance(space, q, focus1_) + metric_distance(space, q, focus2_) <=
         c_best_ + tol;
}

Configuration ProlateSpheroid::sample_raw(RngStream& rng) const {
  const int d = static_cast<int>(center_m_.size());
  // Uniform point in the unit d-ball: uniform direction, radius ~ u^(1/d).
  Eigen::VectorXd z(d);
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i) z[i] = rng.gaussian();
    norm = z.norm();
  } while (norm < 1e-12);
  z *= std::pow(rng.uniform01(), 1.0 / d) / norm;

  const Eigen::VectorXd x = center_m_ + rotation_ * radii_.cwiseProduct(z).eval();
  return x.cwiseQuotient(weights_);
}

// ---------------------------------------------------------------------------
// Samplers

Configuration sample_uniform(const ConfigSpace& space, RngStream& rng) {
  Configuration q(space.dim());
  for (int i = 0; i < space.dim(); ++i) q[i] = rng.uniform(space.lower()[i], space.upper()[i]);
  return q;
}

Configuration sample_spheroid(const ProlateSpheroid& spheroid, const ConfigSpace& space,
                              RngStream& rng) {
  for (int attempt = 0; attempt < kBoundsAttempts; ++attempt) {
    Configuration q = spheroid.sample_raw(rng);
    if (space.contains(q)) return q;
  }
  throw SamplingExhausted("sample_spheroid: no in-bounds sample in 100 attempts");
}

Configuration sample_local(const ConfigSpace& space, const Path& path, int c, RngStream& rng,
                           std::pair<std::size_t, std::size_t>* chosen) {
  const auto n = static_cast<int>(path.size());
  if (n < 2) throw ContractViolation("sample_local: path needs at least two points");
  if (c < 2) throw ContractViolation("sample_local: c must be at least 2");

  int m = n;  // subpath cardinality; c > n falls back to the whole path
  if (c <= n) m = static_cast<int>(rng.uniform_int(c, n));
  const auto j = static_cast<std::size_t>(rng.uniform_int(0, n - m));
  const std::size_t k = j + static_cast<std::size_t>(m) - 1;
  if (chosen) *chosen = {j, k};

  const Path section = subpath(path, j, k);
  ProlateSpheroid spheroid(space, section.front(), section.back(), path_length(space, section));
  return sample_spheroid(spheroid, space, rng);
}

bool inside_hull(const SlicePoint& v_p, const SlicePoint& v_query, const SlicePoint& v_f,
                 double tol) {
  if (v_p.a > v_query.a + tol || v_query.a > v_f.a + tol)
    throw ContractViolation("inside_hull: query not between neighbours along the axis");
  const double span = v_f.a - v_p.a;
  double chord;
  if (span < 1e-12) {
    chord = std::max(v_p.f, v_f.f);  // vertical chord
  } else {
    const double t = (v_query.a - v_p.a) / span;
    chord = v_p.f + t * (v_f.f - v_p.f);
  }
  return v_query.f >= -tol && v_query.f <= chord + tol;
}

// ---------------------------------------------------------------------------
// Slice construction

namespace {

std::vector<SlicePoint> prepare_slice_points(const AxisFrame& frame, const Path& path) {
  std::vector<SlicePoint> pts;
  pts.reserve(path.size() + 2);
  for (const auto& p : path.points) pts.push_back(transf(frame, p));
  pts.push_back({0.0, 0.0});           // o
  pts.push_back({frame.extent, 0.0});  // t

  std::sort(pts.begin(), pts.end(), [](const SlicePoint& l, const SlicePoint& r) {
    return l.a < r.a || (l.a == r.a && l.f < r.f);
  });

  // Equal a-values: only the highest point can be an upper-chain vertex,
  // except on the axis endpoints where o and t stay pinned.
  std::vector<SlicePoint> dedup;
  for (const auto& p : pts) {
    if (!dedup.empty() && dedup.back().a == p.a)
      dedup.back() = p;  // keep max f (sorted ascending within equal a)
    else
      dedup.push_back(p);
  }
  if (dedup.front().f > 0.0) dedup.insert(dedup.begin(), {dedup.front().a, 0.0});
  if (dedup.back().f > 0.0) dedup.push_back({dedup.back().a, 0.0});
  return dedup;
}

std::vector<SlicePoint> scan_monotone(std::vector<SlicePoint> pts) {
  std::vector<SlicePoint> chain;
  chain.reserve(pts.size());
  for (const auto& p : pts) {
    while (chain.size() >= 2 && inside_hull(chain[chain.size() - 2], chain.back(), p))
      chain.pop_back();
    chain.push_back(p);
  }
  return chain;
}

std::vector<SlicePoint> scan_restart(std::vector<SlicePoint> pts) {
  // Literal restart-to-beginning variant: after every elimination the scan
  // resumes at the second point. Quadratic, same output as the single pass.
  std::size_t i = 1;
  while (pts.size() >= 3) {
    if (inside_hull(pts[i - 1], pts[i], pts[i + 1])) {
      pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
      i = 1;
      continue;
    }
    if (i == pts.size() - 2) break;
    ++i;
  }
  return pts;
}

Slice build_slice_impl(AxisFrame frame, const Path& path, HullScan scan) {
  auto pts = prepare_slice_points(frame, path);
  Slice slice;
  slice.frame = std::move(frame);
  slice.vertices = scan == HullScan::MonotoneChain ? scan_monotone(std::move(pts))
                                                   : scan_restart(std::move(pts));
  return slice;
}

}  // namespace

Slice build_slice(const ConfigSpace& space, const Path& path, HullScan scan) {
  return build_slice_impl(build_axis_frame(space, path), path, scan);
}

Slice build_slice(const Path& path, HullScan scan) {
  return build_slice_impl(build_axis_frame(path), path, scan);
}

namespace {

/// Bracketing vertices for an axial position (clamped to the vertex range).
std::pair<const SlicePoint*, const SlicePoint*> bracket(const Slice& slice, double a) {
  const auto& v = slice.vertices;
  auto it = std::upper_bound(v.begin(), v.end(), a,
                             [](double lhs, const SlicePoint& p) { return lhs < p.a; });
  if (it == v.begin()) ++it;
  if (it == v.end()) --it;
  return {&*(it - 1), &*it};
}

}  // namespace

bool slice_contains(const Slice& slice, const Configuration& q) {
  const SlicePoint sp = transf(slice.frame, q);
  if (sp.a < -kBoundaryTol || sp.a > slice.extent() + kBoundaryTol) return false;
  const auto& v = slice.vertices;
  const double a = std::clamp(sp.a, v.front().a, v.back().a);
  const auto [v_p, v_f] = bracket(slice, a);
  return inside_hull(*v_p, {std::clamp(a, v_p->a, v_f->a), sp.f}, *v_f, kBoundaryTol);
}

double f_max_at(const Slice& slice, double a) {
  if (a < 0.0 || a > slice.extent())
    throw ContractViolation("f_max_at: a outside [0, extent]");
  const auto [v_p, v_f] = bracket(slice, a);
  const double span = v_f->a - v_p->a;
  if (span < 1e-12) return std::max(v_p->f, v_f->f);
  const double t = (a - v_p->a) / span;
  return v_p->f + t * (v_f->f - v_p->f);
}

Eigen::VectorXd random_perpendicular(const Eigen::VectorXd& d, RngStream& rng) {
  const auto dim = static_cast<int>(d.size());
  if (dim < 2) throw ContractViolation("random_perpendicular: dimension must be at least 2");
  while (true) {
    Eigen::VectorXd g(dim);
    for (int i = 0; i < dim; ++i) g[i] = rng.gaussian();
    g -= g.dot(d) * d;
    const double norm = g.norm();
    if (norm >= 1e-9) return g / norm;
  }
}

// ---------------------------------------------------------------------------
// Direct sampling of the solid of revolution

namespace {

/// Integral of f(t)^e over one slice segment, f linear from f0 to f1,
/// segment length len; e >= 1.
double segment_weight(double f0, double f1, double len, int e) {
  if (len <= 0.0) return 0.0;
  const double delta = f1 - f0;
  if (std::abs(delta) < 1e-12 * std::max({1.0, std::abs(f0), std::abs(f1)}))
    return len * std::pow(f0, e);
  const int p = e + 1;
  return len * (std::pow(f1, p) - std::pow(f0, p)) / (p * delta);
}

/// Inverse CDF within a segment: returns t in [0, 1] with density f(t)^e.
double segment_invert(double f0, double f1, double u, int e) {
  const double delta = f1 - f0;
  if (std::abs(delta) < 1e-12 * std::max({1.0, std::abs(f0), std::abs(f1)})) return u;
  const int p = e + 1;
  const double fp = std::pow(f0, p) + u * (std::pow(f1, p) - std::pow(f0, p));
  return (std::pow(fp, 1.0 / p) - f0) / delta;
}

}  // namespace

Configuration sample_convex_direct(const Slice& slice, const ConfigSpace& space, RngStream& rng,
                                   DirectMode mode) {
  const auto& v = slice.vertices;
  if (v.size() < 2) throw ContractViolation("sample_convex_direct: degenerate slice");
  const int dim = space.dim();
  const int e = mode == DirectMode::ProfileWeighted ? 1 : std::max(1, dim - 1);

  std::vector<double> cumulative(v.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    total += segment_weight(v[i].f, v[i + 1].f, v[i + 1].a - v[i].a, e);
    cumulative[i] = total;
  }

  for (int attempt = 0; attempt < kBoundsAttempts; ++attempt) {
    double a_prime, f_max;
    if (total <= 0.0) {
      // Zero-area slice: the hull is the axis segment itself.
      a_prime = rng.uniform(0.0, slice.extent());
      f_max = 0.0;
    } else {
      const double target = rng.uniform01() * total;
      const std::size_t seg = static_cast<std::size_t>(
          std::lower_bound(cumulative.begin(), cumulative.end(), target) - cumulative.begin());
      const double lo = seg == 0 ? 0.0 : cumulative[seg - 1];
      const double w = cumulative[seg] - lo;
      const double u = w > 0.0 ? (target - lo) / w : rng.uniform01();
      const double t = segment_invert(v[seg].f, v[seg + 1].f, u, e);
      a_prime = v[seg].a + t * (v[seg + 1].a - v[seg].a);
      f_max = v[seg].f + t * (v[seg + 1].f - v[seg].f);
    }

    double f_prime;
    if (mode == DirectMode::ProfileWeighted || dim <= 2)
      f_prime = rng.uniform(0.0, f_max);
    else
      f_prime = f_max * std::pow(rng.uniform01(), 1.0 / (dim - 1));

    const Eigen::VectorXd radial = random_perpendicular(slice.frame.direction, rng);
    const Eigen::VectorXd x = slice.frame.origin + a_prime * slice.frame.direction +
                              f_prime * radial;
    Configuration q = x.cwiseQuotient(slice.frame.weights);
    if (space.contains(q)) return q;
  }
  throw SamplingExhausted("sample_convex_direct: no in-bounds sample in 100 attempts");
}

Configuration sample_convex_rejection(const Slice& slice, const ConfigSpace& space,
                                      RngStream& rng, RejectionCounter* counter) {
  for (int attempt = 0; attempt < kRejectionAttempts; ++attempt) {
    Configuration q = sample_uniform(space, rng);
    if (counter) ++counter->attempts;
    if (slice_contains(slice, q)) {
      if (counter) ++counter->accepted;
      return q;
    }
  }
  throw SamplingExhausted("sample_convex_rejection: attempt cap exhausted");
}

Configuration sample_combined(const Slice& slice, const ConfigSpace& space, const Path& path,
                              int c, RngStream& rng) {
  for (int attempt = 0; attempt < kRejectionAttempts; ++attempt) {
    Configuration q = sample_local(space, path, c, rng);
    if (slice_contains(slice, q)) return q;
  }
  throw SamplingExhausted("sample_combined: attempt cap exhausted");
}

}  // namespace mplan
