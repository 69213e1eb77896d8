#include "johnkit/lp_spaces.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "johnkit/brascamp_lieb.hpp"
#include "johnkit/john.hpp"
#include "johnkit/measures.hpp"

namespace johnkit {

using boost::math::lgamma;

double WeightedLpGauge::operator()(const Vec& x) const {
  const Vec t = vectors * x;
  double sum = 0.0;
  for (int i = 0; i < t.size(); ++i) sum += alphas(i) * std::pow(std::abs(t(i)), p);
  return std::pow(sum, 1.0 / p);
}

void WeightedLpGauge::validate() const {
  if (vectors.rows() != alphas.size() || vectors.rows() == 0) {
    throw Error(ErrorKind::InvalidInput, "gauge needs matching vectors and alphas");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidInput, "gauge needs 1 <= p < inf");
  if ((alphas.array() <= 0.0).any()) throw Error(ErrorKind::InvalidInput, "alphas must be positive");
  Eigen::ColPivHouseholderQR<Mat> qr(vectors);
  if (qr.rank() < dim()) throw Error(ErrorKind::Degenerate, "gauge vectors do not span");
}

double WeightedLpGauge::bounding_radius() const {
  // With W = sum alpha_i u_i u_i^T: for p <= 2, ||x||^p >= |x|^{p-2} x^T W x;
  // for p > 2, Hoelder gives x^T W x <= (sum alpha)^{1-2/p} ||x||^2.
  const Mat w = vectors.transpose() * alphas.asDiagonal() * vectors;
  const double lambda = Eigen::SelfAdjointEigenSolver<Mat>(w).eigenvalues().minCoeff();
  if (!(lambda > 0.0)) throw Error(ErrorKind::Degenerate, "gauge is not coercive");
  if (p <= 2.0) return std::pow(lambda, -1.0 / p);
  return std::pow(lambda, -0.5) * std::pow(alphas.sum(), 0.5 - 1.0 / p);
}

BodyOracle WeightedLpGauge::oracle() const {
  validate();
  WeightedLpGauge copy = *this;
  return BodyOracle::from_gauge(dim(), bounding_radius(),
                                [copy](const Vec& x) { return copy(x); });
}

void SubspaceSpec::validate() const {
  if (m() < n() || n() < 1) throw Error(ErrorKind::InvalidInput, "subspace needs m >= n >= 1");
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidInput, "subspace needs p >= 1");
  Eigen::ColPivHouseholderQR<Mat> qr(basis);
  qr.setThreshold(1e-12);
  if (qr.rank() < n()) throw Error(ErrorKind::Degenerate, "rank deficient basis");
}

double SubspaceSpec::norm(const Vec& x) const {
  const Vec y = basis * x;
  if (std::isinf(p)) return y.cwiseAbs().maxCoeff();
  double sum = 0.0;
  for (int i = 0; i < y.size(); ++i) sum += std::pow(std::abs(y(i)), p);
  return std::pow(sum, 1.0 / p);
}

double lp_ball_volume(int n, double p) {
  if (n < 1 || !(p >= 1.0)) throw Error(ErrorKind::InvalidInput, "need n >= 1, p >= 1");
  if (std::isinf(p)) return std::ldexp(1.0, n);
  return std::exp(n * std::log(2.0) + n * lgamma(1.0 + 1.0 / p) - lgamma(1.0 + n / p));
}

Estimate gauge_volume_via_lemma7(const BodyOracle& body, double p, const McParams& mc) {
  if (!body.has_gauge()) throw Error(ErrorKind::InvalidInput, "body has no gauge evaluator");
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::InvalidInput, "integral formula needs 1 <= p < inf");
  }
  const int n = body.dim;
  const StudentT proposal{n, 4.0, body.radius};
  std::atomic<bool> non_coercive{false};
  const Moments m = run_batches(mc, [&](Rng& rng) {
    const Vec x = proposal.sample(rng);
    const double g = body.gauge(x);
    // A gauge below |x| / radius means the body escapes its bounding ball.
    if (!(g * body.radius >= (1.0 - 1e-9) * x.norm())) {
      non_coercive = true;
      return 0.0;
    }
    return std::exp(-std::pow(g, p) - proposal.log_density(x));
  });
  if (non_coercive) throw Error(ErrorKind::InvalidInput, "non-coercive gauge");
  const Estimate e = m.estimate();
  const double scale = std::exp(-lgamma(1.0 + n / p));
  return {scale * e.value, scale * e.std_error, e.samples};
}

double prop8_bound(const Vec& weights, const Vec& alphas, double p, int n) {
  if (weights.size() != alphas.size()) throw Error(ErrorKind::InvalidInput, "size mismatch");
  if (std::abs(weights.sum() - n) > 1e-8) {
    std::ostringstream msg;
    msg << "weights must sum to n (got " << weights.sum() << ")";
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
  if ((alphas.array() <= 0.0).any() || (weights.array() <= 0.0).any()) {
    throw Error(ErrorKind::InvalidInput, "weights and alphas must be positive");
  }
  double log_bound = n * std::log(2.0) + n * lgamma(1.0 + 1.0 / p) - lgamma(1.0 + n / p);
  for (int i = 0; i < weights.size(); ++i) {
    log_bound += weights(i) / p * std::log(weights(i) / alphas(i));
  }
  return std::exp(log_bound);
}

Prop8Report verify_prop8(const WeightedLpGauge& gauge, const Vec& weights, const McParams& mc) {
  BLSystem{gauge.vectors, weights}.validate();
  Prop8Report r;
  r.volume = mc_volume(gauge.oracle(), mc);
  r.bound = prop8_bound(weights, gauge.alphas, gauge.p, gauge.dim());
  r.holds = r.volume.value <= r.bound + 3.0 * r.volume.std_error;
  return r;
}

LewisPosition lewis_position(const SubspaceSpec& s, int max_iterations, double tolerance) {
  s.validate();
  if (std::isinf(s.p)) throw Error(ErrorKind::Unsupported, "Lewis position needs p < inf");
  const int n = s.n();
  const double p = s.p;

  LewisPosition out;
  const double biggest = s.basis.rowwise().norm().maxCoeff();
  for (int i = 0; i < s.m(); ++i) {
    if (s.basis.row(i).norm() > 1e-14 * biggest) out.rows.push_back(i);
  }
  Mat rows(static_cast<int>(out.rows.size()), n);
  for (int k = 0; k < rows.rows(); ++k) rows.row(k) = s.basis.row(out.rows[k]);

  // Fixed point L <- L A^{-step/2}, A = sum |r_i|^{p-2} r_i r_i^T over rows of
  // rows * L. A full step is a contraction for p < 4.
  const double step = p < 4.0 ? 1.0 : 0.5;
  Mat l = Mat::Identity(n, n);
  double residual = 0.0;
  int it = 0;
  for (;; ++it) {
    const Mat r = rows * l;
    Vec w(r.rows());
    for (int k = 0; k < r.rows(); ++k) w(k) = std::pow(r.row(k).norm(), p - 2.0);
    const Mat a = r.transpose() * w.asDiagonal() * r;
    residual = (a - Mat::Identity(n, n)).norm();
    if (residual < tolerance) break;
    if (it >= max_iterations) {
      std::ostringstream msg;
      msg << "Lewis iteration did not converge (residual " << residual << ")";
      throw Error(ErrorKind::NotConverged, msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Mat> eig(a);
    const Vec scaled = eig.eigenvalues().array().pow(-0.5 * step);
    l = l * eig.eigenvectors() * scaled.asDiagonal() * eig.eigenvectors().transpose();
  }

  const Mat r = rows * l;
  out.vectors.resize(r.rows(), n);
  out.weights.resize(r.rows());
  for (int k = 0; k < r.rows(); ++k) {
    const double len = r.row(k).norm();
    out.vectors.row(k) = r.row(k) / len;
    out.weights(k) = std::pow(len, p);
  }
  out.map = l;
  out.iterations = it;
  out.residual = decomposition_residuals(out.vectors, out.weights).frobenius;
  return out;
}

double guaranteed_inradius(int n, double p) {
  if (p <= 2.0) return std::pow(static_cast<double>(n), 0.5 - 1.0 / p);
  return 1.0;
}

double inscribed_radius_check(const Mat& vectors, const Vec& weights, double p, std::uint64_t seed) {
  const int n = static_cast<int>(vectors.cols());
  const double radius = guaranteed_inradius(n, p);
  const WeightedLpGauge gauge{vectors, weights, p};
  Rng rng = batch_engine(seed, 0);
  for (int k = 0; k < 1000; ++k) {
    const Vec x = sample_sphere(n, rng);
    const double g = gauge(x);
    if (g > 1.0 / radius + 1e-9) {
      std::ostringstream msg;
      msg << "gauge " << g << " exceeds 1/radius " << 1.0 / radius
          << ": weights are not a valid Lewis decomposition";
      throw Error(ErrorKind::InvalidInput, msg.str());
    }
  }
  return radius;
}

double lp_volume_ratio(int n, double p) {
  const double rho = guaranteed_inradius(n, p);
  return std::pow(lp_ball_volume(n, p) / (unit_ball_volume(n) * std::pow(rho, n)), 1.0 / n);
}

HPolytope l1_gauge_polytope(const Mat& vectors, const Vec& alphas) {
  const int m = static_cast<int>(vectors.rows());
  const int n = static_cast<int>(vectors.cols());
  if (m > 16) throw Error(ErrorKind::Unsupported, "sign-pattern expansion limited to m <= 16");
  std::vector<Vec> normals;
  const double scale = alphas.maxCoeff();
  for (long mask = 0; mask < (1L << m); ++mask) {
    Vec a = Vec::Zero(n);
    for (int i = 0; i < m; ++i) {
      a += ((mask >> i) & 1 ? -1.0 : 1.0) * alphas(i) * vectors.row(i).transpose();
    }
    if (a.norm() > 1e-12 * scale) normals.push_back(a);
  }
  Mat a(static_cast<int>(normals.size()), n);
  for (int k = 0; k < a.rows(); ++k) a.row(k) = normals[k].transpose();
  return HPolytope(a, Vec::Ones(a.rows()));
}

SubspaceVolumeRatio subspace_volume_ratio(const SubspaceSpec& s, const McParams& mc) {
  if (std::isinf(s.p)) throw Error(ErrorKind::Unsupported, "p = inf is handled by closed forms");
  const int n = s.n();
  const LewisPosition lewis = lewis_position(s);
  const WeightedLpGauge gauge = lewis.gauge(s.p);
  const Estimate volume = mc_volume(gauge.oracle(), mc);

  SubspaceVolumeRatio out;
  double ellipsoid_volume = 0.0;
  if (s.p == 1.0) {
    ellipsoid_volume = max_inscribed_ellipsoid(l1_gauge_polytope(lewis.vectors, lewis.weights)).volume();
    out.exact_ellipsoid = true;
  } else {
    ellipsoid_volume = unit_ball_volume(n) * std::pow(guaranteed_inradius(n, s.p), n);
  }
  const double vr = std::pow(volume.value / ellipsoid_volume, 1.0 / n);
  out.vr = {vr, vr * volume.std_error / (n * volume.value), volume.samples};
  out.reference = lp_volume_ratio(n, s.p);
  out.lewis_residual = lewis.residual;
  return out;
}

L1VrBound l1_vr_bound(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dimension must be >= 1");
  const double nn = n;
  L1VrBound b;
  b.displayed = std::exp((nn * std::log(2.0) + lgamma(1.0 + 0.5 * nn) - lgamma(1.0 + nn) -
                          0.5 * nn * std::log(std::numbers::pi)) / nn);
  b.volume_ratio = std::sqrt(nn) * b.displayed;
  b.universal = std::sqrt(2.0 * std::numbers::e / std::numbers::pi);
  return b;
}

}  // namespace johnkit
