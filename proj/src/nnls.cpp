#include "johnkit/nnls.hpp"

#include <vector>

namespace johnkit {
namespace {

Vec solve_on(const Mat& a, const Vec& b, const std::vector<bool>& passive) {
  std::vector<int> cols;
  for (int j = 0; j < static_cast<int>(passive.size()); ++j) {
    if (passive[j]) cols.push_back(j);
  }
  Mat sub(a.rows(), static_cast<int>(cols.size()));
  for (int k = 0; k < sub.cols(); ++k) sub.col(k) = a.col(cols[k]);
  const Vec s = sub.completeOrthogonalDecomposition().solve(b);
  Vec full = Vec::Zero(a.cols());
  for (int k = 0; k < sub.cols(); ++k) full(cols[k]) = s(k);
  return full;
}

}  // namespace

Vec nnls(const Mat& a, const Vec& b, double tol) {
  const int n = static_cast<int>(a.cols());
  Vec x = Vec::Zero(n);
  std::vector<bool> passive(n, false);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() * std::max(1.0, b.norm()));

  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    const Vec w = a.transpose() * (b - a * x);
    int enter = -1;
    double best = tol * scale;
    for (int j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > best) {
        best = w(j);
        enter = j;
      }
    }
    if (enter < 0) break;
    passive[enter] = true;

    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      const Vec s = solve_on(a, b, passive);
      double alpha = 1.0;
      bool all_positive = true;
      for (int j = 0; j < n; ++j) {
        if (passive[j] && s(j) <= 0.0) {
          all_positive = false;
          const double denom = x(j) - s(j);
          if (denom > 0.0) alpha = std::min(alpha, x(j) / denom);
        }
      }
      if (all_positive) {
        x = s;
        break;
      }
      x += alpha * (s - x);
      for (int j = 0; j < n; ++j) {
        if (passive[j] && x(j) <= tol) {
          passive[j] = false;
          x(j) = 0.0;
        }
      }
    }
  }
  return x;
}

std::optional<Vec> least_distance(const Mat& g, const Vec& h, double tol) {
  const int k = static_cast<int>(g.cols());
  const int rows = static_cast<int>(g.rows());
  Mat e(k + 1, rows);
  e.topRows(k) = g.transpose();
  e.row(k) = h.transpose();
  Vec f = Vec::Zero(k + 1);
  f(k) = 1.0;
  const Vec u = nnls(e, f, tol);
  const Vec r = e * u - f;
  if (r.norm() <= 1e-12 || std::abs(r(k)) <= 1e-14) return std::nullopt;
  return Vec(-r.head(k) / r(k));
}

}  // namespace johnkit
