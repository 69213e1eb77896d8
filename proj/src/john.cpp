#include "johnkit/john.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "johnkit/linprog.hpp"
#include "johnkit/measures.hpp"
#include "johnkit/nnls.hpp"

namespace johnkit {
namespace {

// Coordinates of the symmetric shape matrix: one per (row, col) with row <= col.
struct SymIndex {
  std::vector<std::pair<int, int>> pairs;

  explicit SymIndex(int n) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
    }
  }
  int size() const { return static_cast<int>(pairs.size()); }
};

// Barrier objective t * (-log det B) - sum log((b_i - <a_i, d>)^2 - |B a_i|^2)
// over z = (svec(B), d), with a_i unit rows and b_i >= 1 after rescaling.
class LogDetBarrier {
 public:
  LogDetBarrier(const Mat& a, const Vec& b) : a_(a), b_(b), n_(static_cast<int>(a.cols())), sym_(n_) {}

  int variables() const { return sym_.size() + n_; }
  int barrier_parameter() const { return 2 * static_cast<int>(a_.rows()); }

  Mat shape(const Vec& z) const {
    Mat bm(n_, n_);
    for (int k = 0; k < sym_.size(); ++k) {
      const auto [i, j] = sym_.pairs[k];
      bm(i, j) = bm(j, i) = z(k);
    }
    return bm;
  }
  Vec center(const Vec& z) const { return z.tail(n_); }

  Vec pack(const Mat& bm, const Vec& d) const {
    Vec z(variables());
    for (int k = 0; k < sym_.size(); ++k) z(k) = bm(sym_.pairs[k].first, sym_.pairs[k].second);
    z.tail(n_) = d;
    return z;
  }

  /// Returns false if z is outside the barrier domain.
  bool value(const Vec& z, double t, double& f) const {
    const Mat bm = shape(z);
    Eigen::LLT<Mat> llt(bm);
    if (llt.info() != Eigen::Success) return false;
    const Mat& l = llt.matrixL();
    double logdet = 0.0;
    for (int i = 0; i < n_; ++i) {
      if (!(l(i, i) > 0.0)) return false;
      logdet += 2.0 * std::log(l(i, i));
    }
    f = -t * logdet;
    const Vec d = center(z);
    for (int i = 0; i < a_.rows(); ++i) {
      const double s = b_(i) - a_.row(i).dot(d);
      const double g = s * s - (bm * a_.row(i).transpose()).squaredNorm();
      if (!(s > 0.0) || !(g > 0.0)) return false;
      f -= std::log(g);
    }
    return true;
  }

  double log_det(const Vec& z) const { return std::log(shape(z).determinant()); }

  void derivatives(const Vec& z, double t, Vec& grad, Mat& hess) const {
    const int nv = variables();
    const int ns = sym_.size();
    const Mat bm = shape(z);
    const Vec d = center(z);
    const Mat binv = bm.llt().solve(Mat::Identity(n_, n_));

    grad = Vec::Zero(nv);
    hess = Mat::Zero(nv, nv);

    // -log det B: gradient -tr(B^{-1} E_k), Hessian tr(B^{-1} E_k B^{-1} E_l).
    std::vector<Mat> m(ns);
    for (int k = 0; k < ns; ++k) {
      const auto [i, j] = sym_.pairs[k];
      Mat e = Mat::Zero(n_, n_);
      e(i, j) = 1.0;
      e(j, i) = 1.0;
      m[k] = binv * e;
      grad(k) = -t * m[k].trace();
    }
    for (int k = 0; k < ns; ++k) {
      for (int l = k; l < ns; ++l) {
        const double v = t * (m[k].cwiseProduct(m[l].transpose())).sum();
        hess(k, l) = hess(l, k) = v;
      }
    }

    // -log(s^2 - |w|^2) with s = b_i - <a_i, d>, w = B a_i.
    Mat jac = Mat::Zero(n_, nv);
    Vec q = Vec::Zero(nv);
    for (int i = 0; i < a_.rows(); ++i) {
      const Vec ai = a_.row(i).transpose();
      const Vec w = bm * ai;
      const double s = b_(i) - ai.dot(d);
      const double g = s * s - w.squaredNorm();
      jac.setZero();
      for (int k = 0; k < ns; ++k) {
        const auto [p, r] = sym_.pairs[k];
        if (p == r) {
          jac(p, k) = ai(p);
        } else {
          jac(p, k) = ai(r);
          jac(r, k) = ai(p);
        }
      }
      q.setZero();
      q.tail(n_) = -ai;
      const Vec dg = 2.0 * s * q - 2.0 * jac.transpose() * w;
      grad -= dg / g;
      hess += dg * dg.transpose() / (g * g);
      hess -= (2.0 * q * q.transpose() - 2.0 * jac.transpose() * jac) / g;
    }
  }

 private:
  Mat a_;
  Vec b_;
  int n_;
  SymIndex sym_;
};

void require_solver_input(const HPolytope& p) {
  if (!p.is_bounded()) throw Error(ErrorKind::Unbounded, "unbounded polytope");
}

}  // namespace

EllipsoidSolution solve_max_inscribed_ellipsoid(const HPolytope& p,
                                                const EllipsoidSolverOptions& options) {
  require_solver_input(p);
  const int n = p.dim();
  const lp::ChebyshevBall ball = lp::chebyshev_ball(p.normals(), p.offsets());

  // Work in coordinates where the Chebyshev ball is the unit ball.
  const Vec scaled_offsets =
      (p.offsets() - p.normals() * ball.center) / ball.radius;
  LogDetBarrier barrier(p.normals(), scaled_offsets);

  Vec z = barrier.pack(0.5 * Mat::Identity(n, n), Vec::Zero(n));
  const double nu = barrier.barrier_parameter();
  double t = 1.0;
  int iterations = 0;
  std::vector<double> trace;
  Vec grad;
  Mat hess;
  double last_decrement = 0.0;
  // Below this the decrement is dominated by cancellation in the slacks; the
  // noise grows with the number of constraints.
  const double decrement_floor = std::max(1e-5, 1e-6 * nu);

  auto fail = [&](const std::string& why) {
    std::ostringstream msg;
    msg << "ellipsoid solver: " << why << " after " << iterations
        << " Newton steps (gap bound " << nu / t << ", decrement " << last_decrement << ")";
    throw Error(ErrorKind::NotConverged, msg.str());
  };

  for (;;) {
    // Centering.
    for (;;) {
      double f = 0.0;
      if (!barrier.value(z, t, f)) fail("left the barrier domain");
      barrier.derivatives(z, t, grad, hess);
      const Eigen::LDLT<Mat> ldlt(hess);
      const Vec step = ldlt.solve(-grad);
      const double lambda_sq = -grad.dot(step);
      if (!(lambda_sq >= 0.0) || !step.allFinite()) fail("indefinite Newton system");
      const bool stalled = lambda_sq <= decrement_floor && lambda_sq > 0.5 * last_decrement &&
                           last_decrement > 0.0;
      last_decrement = lambda_sq;
      if (0.5 * lambda_sq <= options.newton_tolerance || stalled) break;
      if (++iterations > options.max_iterations) fail("iteration cap reached");

      // Inside lambda < 1/4 the full step stays feasible and converges
      // quadratically; there f is too large for its decrease to be resolved.
      double alpha = 1.0;
      bool accepted = false;
      const bool quadratic = lambda_sq < 1.0 / 16.0;
      for (int ls = 0; ls < 80; ++ls, alpha *= 0.5) {
        double trial = 0.0;
        if (barrier.value(z + alpha * step, t, trial) &&
            (quadratic || trial <= f - 0.25 * alpha * lambda_sq)) {
          accepted = true;
          break;
        }
      }
      if (!accepted) fail("line search failed");
      z += alpha * step;
    }
    trace.push_back(barrier.log_det(z) + n * std::log(ball.radius));
    if (nu / t <= options.gap_tolerance) break;
    t *= options.t_growth;
    last_decrement = 0.0;
  }

  EllipsoidSolution sol;
  sol.ellipsoid.shape = ball.radius * barrier.shape(z);
  sol.ellipsoid.shape = 0.5 * (sol.ellipsoid.shape + sol.ellipsoid.shape.transpose()).eval();
  sol.ellipsoid.center = ball.center + ball.radius * barrier.center(z);
  sol.kkt_residual = (nu + last_decrement) / t;
  sol.iterations = iterations;
  sol.log_det_trace = std::move(trace);
  return sol;
}

Ellipsoid max_inscribed_ellipsoid(const HPolytope& p) {
  return solve_max_inscribed_ellipsoid(p).ellipsoid;
}

JohnPosition john_position(const HPolytope& p) {
  const Ellipsoid e = max_inscribed_ellipsoid(p);
  const AffineMap to_ellipsoid{e.shape, e.center};
  const AffineMap map = to_ellipsoid.inverse();
  return {apply_affine(p, map), map};
}

double contact_tolerance(const HPolytope& p) { return 1e-6 * p.offsets().maxCoeff(); }

Mat contact_points(const HPolytope& p, std::optional<double> eps) {
  const double tol = eps.value_or(contact_tolerance(p));
  std::vector<int> rows;
  for (int i = 0; i < p.size(); ++i) {
    if (p.offset(i) < 1.0 - tol) {
      std::ostringstream msg;
      msg << "body is not in John position: offset " << p.offset(i) << " < 1";
      throw Error(ErrorKind::InvalidInput, msg.str());
    }
    if (p.offset(i) - 1.0 <= tol) rows.push_back(i);
  }
  Mat u(static_cast<int>(rows.size()), p.dim());
  for (int k = 0; k < u.rows(); ++k) u.row(k) = p.normals().row(rows[k]);
  return u;
}

DecompositionResiduals decomposition_residuals(const Mat& vectors, const Vec& weights) {
  const int n = static_cast<int>(vectors.cols());
  const Mat frame = vectors.transpose() * weights.asDiagonal() * vectors;
  DecompositionResiduals r;
  r.frobenius = (frame - Mat::Identity(n, n)).norm();
  r.trace_gap = std::abs(weights.sum() - n);
  r.barycenter = (vectors.transpose() * weights).norm();
  return r;
}

JohnDecomposition john_decomposition(const Mat& contacts, bool symmetric, double tolerance) {
  const int m = static_cast<int>(contacts.rows());
  const int n = static_cast<int>(contacts.cols());
  if (m == 0) throw Error(ErrorKind::Infeasible, "no contact points");

  // Stacked system: independent entries of sum c_i u_i u_i^T = I (off-diagonal
  // rows weighted by sqrt 2 so the residual is the Frobenius norm), then the
  // barycentre rows in the general case.
  const int sym_rows = n * (n + 1) / 2;
  const int rows = sym_rows + (symmetric ? 0 : n);
  Mat a = Mat::Zero(rows, m);
  Vec rhs = Vec::Zero(rows);
  int r = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j, ++r) {
      const double w = i == j ? 1.0 : std::sqrt(2.0);
      a.row(r) = w * contacts.col(i).cwiseProduct(contacts.col(j)).transpose();
      rhs(r) = i == j ? 1.0 : 0.0;
    }
  }
  if (!symmetric) a.bottomRows(n) = contacts.transpose();

  // Minimum-norm solution of the equations, then the closest nonnegative
  // point of the solution set (least-distance program over the null space).
  const Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
  Vec c = cod.solve(rhs);
  if ((a * c - rhs).norm() > 1e3 * tolerance) {
    throw Error(ErrorKind::Infeasible, "identity decomposition is infeasible for these contacts");
  }
  if ((c.array() < 0.0).any()) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    const Vec& sv = svd.singularValues();
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k) {
      if (sv(k) > 1e-10 * std::max(1.0, sv(0))) ++rank;
    }
    const Mat null = svd.matrixV().rightCols(m - rank);
    if (null.cols() == 0) {
      throw Error(ErrorKind::Infeasible, "unique decomposition has negative weights");
    }
    const auto z = least_distance(null, -c);
    if (!z) throw Error(ErrorKind::Infeasible, "no nonnegative decomposition exists");
    c += null * *z;

    // Polish on the support: the minimum-norm solution restricted to it.
    const double cut = 1e-10 * std::max(1.0, c.maxCoeff());
    std::vector<int> support;
    for (int k = 0; k < m; ++k) {
      if (c(k) > cut) support.push_back(k);
    }
    Mat as(rows, static_cast<int>(support.size()));
    for (int k = 0; k < as.cols(); ++k) as.col(k) = a.col(support[k]);
    const Vec cs = as.completeOrthogonalDecomposition().solve(rhs);
    if ((cs.array() > 0.0).all() && (as * cs - rhs).norm() <= (a * c.cwiseMax(0.0) - rhs).norm() + tolerance) {
      c.setZero();
      for (int k = 0; k < as.cols(); ++k) c(support[k]) = cs(k);
    }
    c = c.cwiseMax(0.0);
  }

  const double cut = 1e-12 * std::max(1.0, c.maxCoeff());
  std::vector<int> keep;
  for (int k = 0; k < m; ++k) {
    if (c(k) > cut) keep.push_back(k);
  }
  JohnDecomposition out;
  out.symmetric = symmetric;
  out.contacts.resize(static_cast<int>(keep.size()), n);
  out.weights.resize(static_cast<int>(keep.size()));
  for (int k = 0; k < static_cast<int>(keep.size()); ++k) {
    out.contacts.row(k) = contacts.row(keep[k]);
    out.weights(k) = c(keep[k]);
  }

  const DecompositionResiduals res = out.residuals();
  if (res.frobenius > tolerance || res.trace_gap > tolerance ||
      (!symmetric && res.barycenter > tolerance)) {
    std::ostringstream msg;
    msg << "decomposition residual too large (frobenius " << res.frobenius << ", trace gap "
        << res.trace_gap << ", barycenter " << res.barycenter << ")";
    throw Error(ErrorKind::Infeasible, msg.str());
  }
  return out;
}

double volume_ratio(const HPolytope& p) {
  const Ellipsoid e = max_inscribed_ellipsoid(p);
  const double volume = polytope_volume(vrep_from_hrep(p));
  return std::pow(volume / e.volume(), 1.0 / p.dim());
}

}  // namespace johnkit
