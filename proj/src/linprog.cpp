#include "johnkit/linprog.hpp"

#include <limits>
#include <vector>

namespace johnkit::lp {
namespace {

// Row 0 holds the reduced costs of a maximisation, last column the rhs.
struct Tableau {
  Mat t;
  std::vector<int> basis;  // basic column of each constraint row (1-based rows)
  int columns = 0;

  double& rhs(int row) { return t(row, columns); }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int r = 0; r < t.rows(); ++r) {
      if (r != row && t(r, col) != 0.0) {
        t.row(r) -= t(r, col) * t.row(row);
      }
    }
    basis[row - 1] = col;
  }

  // Bland's rule simplex on the columns flagged in `allowed`.
  Status run(const std::vector<bool>& allowed, double tol) {
    const int rows = static_cast<int>(t.rows());
    for (int iter = 0; iter < 50000; ++iter) {
      int enter = -1;
      for (int j = 0; j < columns; ++j) {
        if (allowed[j] && t(0, j) < -tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::Optimal;

      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 1; r < rows; ++r) {
        if (t(r, enter) > tol) {
          const double ratio = t(r, columns) / t(r, enter);
          if (ratio < best - tol ||
              (ratio <= best + tol && leave > 0 &&
               basis[r - 1] < basis[leave - 1])) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
    }
    throw Error(ErrorKind::NotConverged, "simplex iteration limit reached");
  }
};

}  // namespace

Result maximize(const Vec& c, const Mat& a, const Vec& b, double tol) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (c.size() != n || b.size() != m) {
    throw Error(ErrorKind::InvalidInput, "linear program shape mismatch");
  }

  std::vector<int> needs_artificial;
  for (int i = 0; i < m; ++i) {
    if (b(i) < 0.0) needs_artificial.push_back(i);
  }
  const int k = static_cast<int>(needs_artificial.size());
  // Columns: x+ (n), x- (n), slack (m), artificial (k).
  Tableau tab;
  tab.columns = 2 * n + m + k;
  tab.t = Mat::Zero(m + 1, tab.columns + 1);
  tab.basis.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    tab.t.block(i + 1, 0, 1, n) = sign * a.row(i);
    tab.t.block(i + 1, n, 1, n) = -sign * a.row(i);
    tab.t(i + 1, 2 * n + i) = sign;
    tab.t(i + 1, tab.columns) = sign * b(i);
    tab.basis[i] = 2 * n + i;
  }
  for (int j = 0; j < k; ++j) {
    const int row = needs_artificial[j] + 1;
    const int col = 2 * n + m + j;
    tab.t(row, col) = 1.0;
    tab.basis[row - 1] = col;
  }

  std::vector<bool> allowed(tab.columns, true);
  if (k > 0) {
    // Phase 1: maximise -sum(artificial).
    for (int j = 0; j < k; ++j) tab.t(0, 2 * n + m + j) = 1.0;
    for (int j = 0; j < k; ++j) {
      tab.t.row(0) -= tab.t.row(needs_artificial[j] + 1);
    }
    tab.run(allowed, tol);
    const double scale = 1.0 + b.cwiseAbs().maxCoeff();
    if (tab.t(0, tab.columns) < -tol * scale * 100.0) {
      return {Status::Infeasible, Vec::Zero(n), 0.0};
    }
    for (int r = 1; r <= m; ++r) {
      if (tab.basis[r - 1] < 2 * n + m) continue;
      for (int j = 0; j < 2 * n + m; ++j) {
        if (std::abs(tab.t(r, j)) > tol) {
          tab.pivot(r, j);
          break;
        }
      }
    }
    for (int j = 0; j < k; ++j) allowed[2 * n + m + j] = false;
  }

  // Phase 2.
  tab.t.row(0).setZero();
  tab.t.block(0, 0, 1, n) = -c.transpose();
  tab.t.block(0, n, 1, n) = c.transpose();
  for (int r = 1; r <= m; ++r) {
    const double coeff = tab.t(0, tab.basis[r - 1]);
    if (coeff != 0.0) tab.t.row(0) -= coeff * tab.t.row(r);
  }
  if (tab.run(allowed, tol) == Status::Unbounded) {
    return {Status::Unbounded, Vec::Zero(n), std::numeric_limits<double>::infinity()};
  }

  Vec x = Vec::Zero(n);
  for (int r = 1; r <= m; ++r) {
    const int col = tab.basis[r - 1];
    if (col < n) {
      x(col) += tab.rhs(r);
    } else if (col < 2 * n) {
      x(col - n) -= tab.rhs(r);
    }
  }
  return {Status::Optimal, x, c.dot(x)};
}

ChebyshevBall chebyshev_ball(const Mat& unit_normals, const Vec& offsets) {
  const int m = static_cast<int>(unit_normals.rows());
  const int n = static_cast<int>(unit_normals.cols());
  // Variables (x, r); rows <a_i, x> + r <= b_i and -r <= 0.
  Mat a = Mat::Zero(m + 1, n + 1);
  a.topLeftCorner(m, n) = unit_normals;
  a.block(0, n, m, 1).setOnes();
  a(m, n) = -1.0;
  Vec b(m + 1);
  b << offsets, 0.0;
  Vec c = Vec::Zero(n + 1);
  c(n) = 1.0;
  const Result res = maximize(c, a, b);
  if (res.status == Status::Unbounded) {
    throw Error(ErrorKind::Unbounded, "unbounded: Chebyshev radius is infinite");
  }
  if (res.status == Status::Infeasible || res.x(n) <= 0.0) {
    throw Error(ErrorKind::Degenerate, "polytope has empty interior");
  }
  return {res.x.head(n), res.x(n)};
}

bool in_convex_hull(const Mat& points, const Vec& x, double tol) {
  const int k = static_cast<int>(points.rows());
  const int n = static_cast<int>(points.cols());
  // Feasibility in lambda: P^T lambda = x, sum lambda = 1, lambda >= 0.
  Mat a = Mat::Zero(2 * n + 2 + k, k);
  Vec b = Vec::Zero(2 * n + 2 + k);
  a.topRows(n) = points.transpose();
  b.head(n) = x.array() + tol;
  a.middleRows(n, n) = -points.transpose();
  b.segment(n, n) = -x.array() + tol;
  a.row(2 * n).setOnes();
  b(2 * n) = 1.0 + tol;
  a.row(2 * n + 1).setConstant(-1.0);
  b(2 * n + 1) = -1.0 + tol;
  a.bottomRows(k) = -Mat::Identity(k, k);
  const Result res = maximize(Vec::Zero(k), a, b, 1e-12);
  return res.status == Status::Optimal;
}

}  // namespace johnkit::lp
