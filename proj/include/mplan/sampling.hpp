#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "mplan/cspace.hpp"
#include "mplan/rng.hpp"

namespace mplan {

// ---------------------------------------------------------------------------
// Sampler selection

enum class SamplerKind { Uniform, Informed, LocalInformed, Convex, LocalConvex };

/// CLI / file names: uniform, informed, pi, c, pic.
SamplerKind parse_sampler_kind(const std::string& name);
std::string sampler_kind_name(SamplerKind kind);

/// Sampler selection plus its parameters: minimum subpath cardinality `c`
/// (LocalInformed / LocalConvex) and the probability `epsilon` of substituting
/// a whole-path spheroid draw (Convex / LocalConvex).
struct SamplerSpec {
  SamplerKind kind = SamplerKind::Uniform;
  int c = 5;
  double epsilon = 1e-5;
};

// ---------------------------------------------------------------------------
// Prolate spheroid (the informed set and each local hyperellipsoid)

/// Hyperellipsoid of points whose summed distance to the two foci is at most
/// c_best (the transverse diameter). Degenerates to a segment when c_best
/// equals the inter-focal distance and to a ball when the foci coincide.
class ProlateSpheroid {
 public:
  ProlateSpheroid(const ConfigSpace& space, Configuration focus1, Configuration focus2,
                  double c_best);

  const Configuration& focus1() const { return focus1_; }
  const Configuration& focus2() const { return focus2_; }
  double transverse_diameter() const { return c_best_; }
  double focal_distance() const { return c_min_; }

  /// Two-focal-radii membership test under the space metric.
  bool contains(const ConfigSpace& space, const Configuration& q, double tol = 1e-9) const;

  /// One draw, uniform over the spheroid volume, in metric coordinates
  /// mapped back to raw coordinates. Ignores space bounds.
  Configuration sample_raw(RngStream& rng) const;

 private:
  Configuration focus1_, focus2_;
  double c_best_, c_min_;
  Eigen::VectorXd weights_, center_m_;
  Eigen::MatrixXd rotation_;  // first column aligned with focus2 - focus1
  Eigen::VectorXd radii_;
};

// ---------------------------------------------------------------------------
// Samplers

Configuration sample_uniform(const ConfigSpace& space, RngStream& rng);

/// Spheroid draw re-sampled until it falls inside the space bounds
/// (at most 100 attempts, then SamplingExhausted).
Configuration sample_spheroid(const ProlateSpheroid& spheroid, const ConfigSpace& space,
                              RngStream& rng);

/// Locally informed draw: pick a subpath cardinality m uniformly from
/// {c, ..., n}, a start index uniformly over the valid range, and sample the
/// spheroid of that subpath. With c > n the whole-path spheroid is used.
/// `chosen` (optional) receives the selected subpath index range.
Configuration sample_local(const ConfigSpace& space, const Path& path, int c, RngStream& rng,
                           std::pair<std::size_t, std::size_t>* chosen = nullptr);

/// True iff v_query lies between the SG-axis (f = 0) and the chord
/// v_p -> v_f, boundary inclusive within tol. Requires v_p.a <= v_query.a <= v_f.a.
bool inside_hull(const SlicePoint& v_p, const SlicePoint& v_query, const SlicePoint& v_f,
                 double tol = 0.0);

// ---------------------------------------------------------------------------
// Slice of the convex hull of revolution

/// 2D slice of the convex sampling space: the upper convex chain of the
/// transformed path points over the SG-axis segment.
struct Slice {
  AxisFrame frame;
  std::vector<SlicePoint> vertices;  // ascending a; first/last on the axis

  double extent() const { return frame.extent; }
};

/// Elimination strategies for the upper-chain scan. Both produce the same
/// vertex set; RestartScan re-checks from the beginning after every
/// elimination and exists for differential testing.
enum class HullScan { MonotoneChain, RestartScan };

Slice build_slice(const ConfigSpace& space, const Path& path,
                  HullScan scan = HullScan::MonotoneChain);
Slice build_slice(const Path& path, HullScan scan = HullScan::MonotoneChain);

/// Membership in the hull of revolution (tolerance 1e-9 on the boundary).
bool slice_contains(const Slice& slice, const Configuration& q);

/// Half-width of the slice at axial position a in [0, extent].
double f_max_at(const Slice& slice, double a);

/// Unit vector perpendicular to unit vector d, uniform over directions in the
/// orthogonal complement. Requires dim >= 2.
Eigen::VectorXd random_perpendicular(const Eigen::VectorXd& d, RngStream& rng);

/// Axial weighting of the direct sampler. ProfileWeighted follows the
/// half-width profile f_max with f' uniform; VolumeUniform weights by
/// f_max^(dim-1) with f' ~ f_max * u^(1/(dim-1)), which is uniform over the
/// solid of revolution for dim >= 3.
enum class DirectMode { ProfileWeighted, VolumeUniform };

Configuration sample_convex_direct(const Slice& slice, const ConfigSpace& space, RngStream& rng,
                                   DirectMode mode = DirectMode::ProfileWeighted);

/// Attempt/acceptance counters for rejection sampling diagnostics.
struct RejectionCounter {
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  double acceptance_ratio() const {
    return attempts == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(attempts);
  }
};

Configuration sample_convex_rejection(const Slice& slice, const ConfigSpace& space,
                                      RngStream& rng, RejectionCounter* counter = nullptr);

/// Intersection sampler: locally informed draws filtered by the slice
/// (at most 10^4 attempts, then SamplingExhausted).
Configuration sample_combined(const Slice& slice, const ConfigSpace& space, const Path& path,
                              int c, RngStream& rng);

/// With probability epsilon draw from the whole-path spheroid, otherwise from
/// `base`. Keeps asymptotic optimality for samplers that do not cover the
/// informed set.
template <typename BaseSampler>
Configuration mix_with_informed(BaseSampler&& base, const ConfigSpace& space, const Path& path,
                                double epsilon, RngStream& rng) {
  if (rng.bernoulli(epsilon)) {
    ProlateSpheroid whole(space, path.front(), path.back(), path_length(space, path));
    return sample_spheroid(whole, space, rng);
  }
  return base(rng);
}

}  // namespace mplan
