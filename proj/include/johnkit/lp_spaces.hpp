#pragma once

#include <limits>

#include "johnkit/geometry.hpp"
#include "johnkit/sampling.hpp"

namespace johnkit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// x -> (sum alpha_i |<u_i, x>|^p)^{1/p} on R^n.
struct WeightedLpGauge {
  Mat vectors;  // unit rows u_i
  Vec alphas;   // alpha_i > 0
  double p = 1.0;

  int dim() const { return static_cast<int>(vectors.cols()); }
  double operator()(const Vec& x) const;
  void validate() const;
  /// Radius of a Euclidean ball guaranteed to contain the unit ball.
  double bounding_radius() const;
  BodyOracle oracle() const;
};

/// n-dimensional subspace of l_p^m spanned by the columns of `basis` (m x n).
struct SubspaceSpec {
  Mat basis;
  double p = 1.0;

  int m() const { return static_cast<int>(basis.rows()); }
  int n() const { return static_cast<int>(basis.cols()); }
  void validate() const;
  /// ||basis * x||_p
  double norm(const Vec& x) const;
};

/// 2^n Gamma(1 + 1/p)^n / Gamma(1 + n/p); 2^n for p = infinity.
double lp_ball_volume(int n, double p);

/// |K| = Gamma(1 + n/p)^{-1} * int e^{-||x||^p} dx, with the integral
/// estimated by importance sampling from an isotropic Student-t proposal.
Estimate gauge_volume_via_lemma7(const BodyOracle& body, double p, const McParams& mc);

/// 2^n Gamma(1+1/p)^n / Gamma(1+n/p) * prod (c_i / alpha_i)^{c_i / p}.
double prop8_bound(const Vec& weights, const Vec& alphas, double p, int n);

struct Prop8Report {
  Estimate volume;
  double bound = 0.0;
  bool holds = false;  // volume <= bound + 3 std_error
};

Prop8Report verify_prop8(const WeightedLpGauge& gauge, const Vec& weights, const McParams& mc);

struct LewisPosition {
  Mat vectors;  // u_i (rows with nonzero image only)
  Vec weights;  // c_i
  Mat map;      // L: y in R^n represents the subspace vector basis * L * y
  std::vector<int> rows;  // indices of the basis rows that were kept
  double residual = 0.0;  // ||sum c_i u_i u_i^T - I||_F
  int iterations = 0;

  WeightedLpGauge gauge(double p) const { return {vectors, weights, p}; }
};

/// Lewis change of basis: rows r_i of basis * L satisfy
/// sum |r_i|^{p-2} r_i r_i^T = I, giving u_i = r_i / |r_i|, c_i = |r_i|^p.
LewisPosition lewis_position(const SubspaceSpec& s, int max_iterations = 500,
                             double tolerance = 1e-10);

/// Guaranteed Euclidean inradius of the unit ball in Lewis position:
/// n^{1/2 - 1/p} for p <= 2, 1 for p > 2.
double guaranteed_inradius(int n, double p);

/// Returns guaranteed_inradius and checks ||x|| <= |x| / radius on 1000
/// seeded random unit vectors; throws if violated by more than 1e-9.
double inscribed_radius_check(const Mat& vectors, const Vec& weights, double p,
                              std::uint64_t seed = 1);

/// vr of the canonical l_p^n ball: its maximal ellipsoid is the centred
/// Euclidean ball of radius guaranteed_inradius(n, p).
double lp_volume_ratio(int n, double p);

struct SubspaceVolumeRatio {
  Estimate vr;
  /// true: exact maximal ellipsoid (polytopal ball, p = 1); false: upper
  /// bound from the guaranteed inscribed ball.
  bool exact_ellipsoid = false;
  double reference = 0.0;  // lp_volume_ratio(n, p)
  double lewis_residual = 0.0;
};

SubspaceVolumeRatio subspace_volume_ratio(const SubspaceSpec& s, const McParams& mc);

/// Unit ball of a weighted l_1 gauge as an H-polytope (2^m sign patterns).
HPolytope l1_gauge_polytope(const Mat& vectors, const Vec& alphas);

struct L1VrBound {
  /// (2^n Gamma(1+n/2) / (Gamma(1+n) pi^{n/2}))^{1/n}, the expression as
  /// usually displayed; equals (|B_1^n| / v_n)^{1/n}.
  double displayed = 0.0;
  /// sqrt(n) * displayed = vr(l_1^n), which increases to the constant.
  double volume_ratio = 0.0;
  /// sqrt(2e / pi).
  double universal = 0.0;
};

L1VrBound l1_vr_bound(int n);

}  // namespace johnkit
