#pragma once

#include <string>
#include <variant>
#include <vector>

#include "johnkit/john.hpp"
#include "johnkit/sampling.hpp"

namespace johnkit {

/// Unit vectors u_i (rows) with weights c_i, meant to satisfy
/// sum c_i u_i (x) u_i = I_d.
struct BLSystem {
  Mat vectors;
  Vec weights;

  int dim() const { return static_cast<int>(vectors.cols()); }
  int size() const { return static_cast<int>(vectors.rows()); }
  /// Throws unless the identity decomposition holds to `tol`.
  void validate(double tol = 1e-8) const;
};

/// Frobenius residual, trace gap and barycentre norm; never throws.
DecompositionResiduals verify_decomposition(const BLSystem& s);

/// Valid system from any spanning frame r_i: whiten by (sum r_i r_i^T)^{-1/2}
/// and split each row into direction and squared length.
BLSystem system_from_frame(const Mat& rows);

/// A nonnegative integrable function on the line.
class Density1D {
 public:
  struct Exponential {};  // e^{-t} on t >= 0
  struct Gaussian {
    double sigma = 1.0;  // normalised N(0, sigma^2) density
  };
  struct Indicator {
    double a = 0.0, b = 1.0;
  };
  struct Table {  // piecewise linear through (grid, values), zero outside
    std::vector<double> grid, values;
  };
  using Kind = std::variant<Exponential, Gaussian, Indicator, Table>;

  explicit Density1D(Kind kind);
  static Density1D exponential() { return Density1D(Exponential{}); }
  static Density1D gaussian(double sigma) { return Density1D(Gaussian{sigma}); }
  static Density1D indicator(double a, double b) { return Density1D(Indicator{a, b}); }
  static Density1D table(std::vector<double> grid, std::vector<double> values) {
    return Density1D(Table{std::move(grid), std::move(values)});
  }

  double operator()(double t) const;
  /// Exact integral of the density (of the interpolant, for tables).
  double integral() const { return integral_; }
  /// Length scale of the bulk of the mass.
  double spread() const;
  std::string tag() const;
  const Kind& kind() const { return kind_; }

 private:
  Kind kind_;
  double integral_ = 0.0;
};

/// Monte Carlo estimate of
///   int prod f_i(<u_i, x>)^{c_i} dx  /  prod (int f_i)^{c_i}
/// by importance sampling; the right-hand side is exact.
Estimate bl_ratio(const BLSystem& s, const std::vector<Density1D>& densities, const McParams& mc);

/// v_i = sqrt(n/(n+1)) (-u_i, 1/sqrt n), d_i = (n+1) c_i / n in R^{n+1}.
/// Requires |sum c_i u_i| <= tol.
BLSystem lift_to_cone(const BLSystem& s, double tol = 1e-8);

/// Integral over y in R^n of prod f(<v_i, (y, r)>)^{d_i}, f(t) = e^{-t} 1{t >= 0},
/// for a lifted system, sampled uniformly on [-half_width, half_width]^n.
Estimate cone_section_integral(const BLSystem& lifted, double r, double half_width,
                               const McParams& mc);

/// int_0^inf e^{-sqrt(n+1) r} (r / sqrt n)^n dr by double-exponential quadrature.
double cone_profile_integral(int n);

/// Volume of the regular simplex circumscribing B_2^n:
/// n^{n/2} (n+1)^{(n+1)/2} / n!.
double simplex_volume_bound(int n);

/// 2^n, the volume of the cube circumscribing B_2^n.
double cube_volume_bound(int n);

/// Largest isoperimetric quotient of a body in John position: 2n for
/// symmetric bodies, n * simplex_volume_bound(n)^{1/n} in general.
double reverse_isoperimetric_constant(int n, bool symmetric);

}  // namespace johnkit
