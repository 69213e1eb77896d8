#pragma once

#include <cmath>
#include <vector>

#include "johnkit/brascamp_lieb.hpp"
#include "johnkit/geometry.hpp"
#include "johnkit/linprog.hpp"
#include "johnkit/sampling.hpp"

namespace johnkit::testing {

inline bool within_sigmas(double estimate, double std_error, double exact, double k = 3.0) {
  return std::abs(estimate - exact) <= k * std_error;
}

/// Vertices of {x : Ax <= b} by brute force over every n-subset of rows.
inline Mat brute_force_vertices(const Mat& a, const Vec& b, double tol = 1e-9) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  std::vector<Vec> found;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  for (;;) {
    Mat sub(n, n);
    Vec rhs(n);
    for (int i = 0; i < n; ++i) {
      sub.row(i) = a.row(pick[i]);
      rhs(i) = b(pick[i]);
    }
    Eigen::FullPivLU<Mat> lu(sub);
    if (lu.isInvertible()) {
      const Vec x = lu.solve(rhs);
      if (((a * x - b).array() <= tol).all()) {
        bool dup = false;
        for (const Vec& v : found) dup = dup || (v - x).norm() <= 1e-7;
        if (!dup) found.push_back(x);
      }
    }
    int k = n - 1;
    while (k >= 0 && pick[k] == m - n + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int i = k + 1; i < n; ++i) pick[i] = pick[i - 1] + 1;
  }
  Mat out(static_cast<int>(found.size()), n);
  for (int i = 0; i < out.rows(); ++i) out.row(i) = found[i].transpose();
  return out;
}

/// Every row of `a` matches some row of `b` to `tol`, and the counts agree.
inline bool same_point_sets(const Mat& a, const Mat& b, double tol = 1e-8) {
  if (a.rows() != b.rows()) return false;
  for (int i = 0; i < a.rows(); ++i) {
    bool hit = false;
    for (int k = 0; k < b.rows() && !hit; ++k) hit = (a.row(i) - b.row(k)).norm() <= tol;
    if (!hit) return false;
  }
  return true;
}

/// Boundary points of the unit disc as a fine circumscribed polygon.
inline HPolytope disc_polygon(int sides) { return regular_polygon_hrep(sides, 1.0); }

/// Polygon circumscribing the l_p unit ball in R^2, tangent at `count`
/// boundary points spread by angle.
inline HPolytope lp_ball_polygon(double p, int count) {
  Mat a(count, 2);
  Vec b(count);
  for (int k = 0; k < count; ++k) {
    const double phi = 2.0 * M_PI * k / count;
    Vec x(2);
    x << std::cos(phi), std::sin(phi);
    const double norm = std::pow(std::pow(std::abs(x(0)), p) + std::pow(std::abs(x(1)), p), 1.0 / p);
    x /= norm;
    Vec g(2);
    for (int i = 0; i < 2; ++i) {
      g(i) = (x(i) >= 0 ? 1.0 : -1.0) * std::pow(std::abs(x(i)), p - 1.0);
    }
    a.row(k) = g.transpose();
    b(k) = g.dot(x);
  }
  return HPolytope(a, b);
}

/// Random valid rank-one system in R^d with m vectors, from a Gaussian frame.
inline BLSystem random_system(int d, int m, Rng& rng) {
  Mat frame(m, d);
  for (int i = 0; i < m; ++i) frame.row(i) = sample_gaussian(d, rng).transpose();
  return system_from_frame(frame);
}

/// Random system with sum c_i u_i = 0 built from +- pairs of a Gaussian frame.
inline BLSystem random_paired_system(int d, int pairs, Rng& rng) {
  Mat frame(2 * pairs, d);
  for (int i = 0; i < pairs; ++i) {
    frame.row(i) = sample_gaussian(d, rng).transpose();
    frame.row(pairs + i) = -frame.row(i);
  }
  return system_from_frame(frame);
}

}  // namespace johnkit::testing
