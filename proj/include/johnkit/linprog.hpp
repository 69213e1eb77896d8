#pragma once

#include "johnkit/types.hpp"

namespace johnkit::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Vec x;
  double value = 0.0;
};

/// maximize <c, x> subject to A x <= b, x free. Dense two-phase simplex
/// with Bland's rule; intended for the small programs that show up here
/// (a few dozen rows, n <= 10 columns).
Result maximize(const Vec& c, const Mat& a, const Vec& b, double tol = 1e-10);

struct ChebyshevBall {
  Vec center;
  double radius = 0.0;
};

/// Largest Euclidean ball inside {x : <a_i, x> <= b_i} with unit rows a_i.
ChebyshevBall chebyshev_ball(const Mat& unit_normals, const Vec& offsets);

/// True when x is a convex combination of the rows of `points`.
bool in_convex_hull(const Mat& points, const Vec& x, double tol = 1e-9);

}  // namespace johnkit::lp
