#pragma once

#include <optional>
#include <vector>

#include "johnkit/geometry.hpp"

namespace johnkit {

struct EllipsoidSolverOptions {
  /// Stop once the duality gap bound (barrier parameter / t) drops below this.
  double gap_tolerance = 1e-10;
  /// Centering stops when lambda^2 / 2 falls below this.
  double newton_tolerance = 1e-10;
  int max_iterations = 200;
  double t_growth = 25.0;
};

struct EllipsoidSolution {
  Ellipsoid ellipsoid;
  /// Bound on the log det optimality gap, (barrier parameter + decrement) / t.
  double kkt_residual = 0.0;
  int iterations = 0;
  /// log det B after each completed centering step.
  std::vector<double> log_det_trace;
};

/// Maximum-volume ellipsoid {B y + d : |y| <= 1} inside a bounded polytope:
/// maximise log det B subject to |B a_i| + <a_i, d> <= b_i, solved by a
/// barrier method on the second-order-cone constraints with damped Newton
/// centering, started from the Chebyshev ball.
EllipsoidSolution solve_max_inscribed_ellipsoid(const HPolytope& p,
                                                const EllipsoidSolverOptions& options = {});

Ellipsoid max_inscribed_ellipsoid(const HPolytope& p);

struct JohnPosition {
  HPolytope body;
  /// Inverse of the ellipsoid map y -> B y + d.
  AffineMap map;
};

JohnPosition john_position(const HPolytope& p);

/// Default contact tolerance: 1e-6 * max_i b_i.
double contact_tolerance(const HPolytope& p);

/// Normals a_i whose facets touch the unit ball (b_i - 1 <= eps), as rows.
Mat contact_points(const HPolytope& p, std::optional<double> eps = std::nullopt);

struct DecompositionResiduals {
  double frobenius = 0.0;   // ||sum c_i u_i u_i^T - I||_F
  double trace_gap = 0.0;   // |sum c_i - n|
  double barycenter = 0.0;  // |sum c_i u_i|
};

DecompositionResiduals decomposition_residuals(const Mat& vectors, const Vec& weights);

struct JohnDecomposition {
  Mat contacts;  // rows u_i
  Vec weights;   // c_i > 0
  bool symmetric = true;

  DecompositionResiduals residuals() const {
    return decomposition_residuals(contacts, weights);
  }
};

/// Nonnegative weights with sum c_i u_i (x) u_i = I (and sum c_i u_i = 0 when
/// not symmetric); the minimum-norm such solution, zero weights dropped.
JohnDecomposition john_decomposition(const Mat& contacts, bool symmetric,
                                     double tolerance = 1e-8);

/// (|P| / |E|)^{1/n} with E the maximal inscribed ellipsoid.
double volume_ratio(const HPolytope& p);

}  // namespace johnkit
