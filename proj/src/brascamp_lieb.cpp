#include "johnkit/brascamp_lieb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace johnkit {

void BLSystem::validate(double tol) const {
  if (vectors.rows() != weights.size() || vectors.rows() == 0) {
    throw Error(ErrorKind::InvalidInput, "system needs matching, nonempty vectors and weights");
  }
  if ((weights.array() <= 0.0).any()) {
    throw Error(ErrorKind::InvalidInput, "weights must be positive");
  }
  for (int i = 0; i < size(); ++i) {
    if (std::abs(vectors.row(i).norm() - 1.0) > 1e-12) {
      throw Error(ErrorKind::InvalidInput, "system vectors must be unit length");
    }
  }
  const DecompositionResiduals r = verify_decomposition(*this);
  if (r.frobenius > tol || r.trace_gap > tol) {
    std::ostringstream msg;
    msg << "not an identity decomposition (frobenius " << r.frobenius << ", trace gap "
        << r.trace_gap << ")";
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
}

DecompositionResiduals verify_decomposition(const BLSystem& s) {
  return decomposition_residuals(s.vectors, s.weights);
}

BLSystem system_from_frame(const Mat& rows) {
  const int d = static_cast<int>(rows.cols());
  const Mat frame = rows.transpose() * rows;
  Eigen::SelfAdjointEigenSolver<Mat> eig(frame);
  if (eig.eigenvalues().minCoeff() <= 1e-12 * eig.eigenvalues().maxCoeff()) {
    throw Error(ErrorKind::Degenerate, "frame does not span");
  }
  const Mat whiten = eig.operatorInverseSqrt();
  BLSystem s;
  s.vectors.resize(rows.rows(), d);
  s.weights.resize(rows.rows());
  for (int i = 0; i < rows.rows(); ++i) {
    const Vec r = whiten * rows.row(i).transpose();
    s.weights(i) = r.squaredNorm();
    s.vectors.row(i) = (r / r.norm()).transpose();
  }
  return s;
}

namespace {

double table_value(const Density1D::Table& t, double x) {
  if (x < t.grid.front() || x > t.grid.back()) return 0.0;
  const auto it = std::upper_bound(t.grid.begin(), t.grid.end(), x);
  if (it == t.grid.end()) return t.values.back();
  const size_t k = static_cast<size_t>(it - t.grid.begin());
  const double x0 = t.grid[k - 1], x1 = t.grid[k];
  const double w = (x - x0) / (x1 - x0);
  return (1.0 - w) * t.values[k - 1] + w * t.values[k];
}

struct IntegralOf {
  double operator()(const Density1D::Exponential&) const { return 1.0; }
  double operator()(const Density1D::Gaussian& g) const {
    if (!(g.sigma > 0.0)) throw Error(ErrorKind::InvalidInput, "gaussian sigma must be positive");
    return 1.0;
  }
  double operator()(const Density1D::Indicator& ind) const {
    if (!(ind.b > ind.a)) throw Error(ErrorKind::InvalidInput, "indicator needs a < b");
    return ind.b - ind.a;
  }
  double operator()(const Density1D::Table& t) const {
    if (t.grid.size() < 2 || t.grid.size() != t.values.size()) {
      throw Error(ErrorKind::InvalidInput, "table needs >= 2 matching grid/value entries");
    }
    double total = 0.0;
    for (size_t k = 0; k + 1 < t.grid.size(); ++k) {
      if (!(t.grid[k + 1] > t.grid[k])) {
        throw Error(ErrorKind::InvalidInput, "table grid must be increasing");
      }
      total += 0.5 * (t.values[k] + t.values[k + 1]) * (t.grid[k + 1] - t.grid[k]);
    }
    for (double v : t.values) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::InvalidInput, "table values must be finite and nonnegative");
      }
    }
    return total;
  }
};

}  // namespace

Density1D::Density1D(Kind kind) : kind_(std::move(kind)) {
  integral_ = std::visit(IntegralOf{}, kind_);
  if (!(integral_ > 0.0) || !std::isfinite(integral_)) {
    throw Error(ErrorKind::InvalidInput, "density must have finite positive integral");
  }
}

double Density1D::operator()(double t) const {
  return std::visit(
      [t](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Exponential>) {
          return t >= 0.0 ? std::exp(-t) : 0.0;
        } else if constexpr (std::is_same_v<K, Gaussian>) {
          return std::exp(-0.5 * t * t / (k.sigma * k.sigma)) /
                 (k.sigma * std::sqrt(2.0 * std::numbers::pi));
        } else if constexpr (std::is_same_v<K, Indicator>) {
          return (t >= k.a && t <= k.b) ? 1.0 : 0.0;
        } else {
          return table_value(k, t);
        }
      },
      kind_);
}

double Density1D::spread() const {
  return std::visit(
      [](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Exponential>) {
          return 1.0;
        } else if constexpr (std::is_same_v<K, Gaussian>) {
          return k.sigma;
        } else if constexpr (std::is_same_v<K, Indicator>) {
          return std::max(std::abs(k.a), std::abs(k.b));
        } else {
          return std::max(std::abs(k.grid.front()), std::abs(k.grid.back()));
        }
      },
      kind_);
}

std::string Density1D::tag() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Exponential>) return "exponential";
        if constexpr (std::is_same_v<K, Gaussian>) return "gaussian";
        if constexpr (std::is_same_v<K, Indicator>) return "indicator";
        return "table";
      },
      kind_);
}

Estimate bl_ratio(const BLSystem& s, const std::vector<Density1D>& densities, const McParams& mc) {
  if (static_cast<int>(densities.size()) != s.size()) {
    throw Error(ErrorKind::InvalidInput, "need one density per vector");
  }
  s.validate();
  const int d = s.dim();

  double log_rhs = 0.0;
  double scale = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    log_rhs += s.weights(i) * std::log(densities[i].integral());
    scale = std::max(scale, densities[i].spread());
  }
  if (!std::isfinite(log_rhs)) throw Error(ErrorKind::InvalidInput, "zero right-hand side");

  // Heavy-tailed proposal: the weight h / q stays bounded for every density
  // family here (all decay at least exponentially), so the variance is finite.
  const StudentT proposal{d, 4.0, std::max(scale, 0.5)};
  const Moments lhs = run_batches(mc, [&](Rng& rng) {
    const Vec x = proposal.sample(rng);
    const Vec proj = s.vectors * x;
    double log_h = 0.0;
    for (int i = 0; i < s.size(); ++i) {
      const double f = densities[i](proj(i));
      if (f <= 0.0) return 0.0;  // 0^c = 0 for c > 0
      log_h += s.weights(i) * std::log(f);
    }
    return std::exp(log_h - proposal.log_density(x));
  });
  const Estimate e = lhs.estimate();
  const double rhs = std::exp(log_rhs);
  return {e.value / rhs, e.std_error / rhs, e.samples};
}

BLSystem lift_to_cone(const BLSystem& s, double tol) {
  const int n = s.dim();
  const double bary = (s.vectors.transpose() * s.weights).norm();
  if (bary > tol) {
    std::ostringstream msg;
    msg << "lift needs sum c_i u_i = 0, got norm " << bary;
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
  const double nn = n;
  const double scale = std::sqrt(nn / (nn + 1.0));
  BLSystem lifted;
  lifted.vectors.resize(s.size(), n + 1);
  lifted.vectors.leftCols(n) = -scale * s.vectors;
  lifted.vectors.col(n).setConstant(scale / std::sqrt(nn));
  lifted.weights = (nn + 1.0) / nn * s.weights;
  return lifted;
}

Estimate cone_section_integral(const BLSystem& lifted, double r, double half_width,
                               const McParams& mc) {
  const int n = lifted.dim() - 1;
  const double box = std::pow(2.0 * half_width, n);
  const Moments m = run_batches(mc, [&](Rng& rng) {
    Vec x(n + 1);
    x.head(n) = sample_box(n, half_width, rng);
    x(n) = r;
    const Vec t = lifted.vectors * x;
    if ((t.array() < 0.0).any()) return 0.0;
    return std::exp(-lifted.weights.dot(t));
  });
  const Estimate e = m.estimate();
  return {box * e.value, box * e.std_error, e.samples};
}

double cone_profile_integral(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dimension must be >= 1");
  const double nn = n;
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [nn](double r) { return std::exp(-std::sqrt(nn + 1.0) * r + nn * std::log(r / std::sqrt(nn))); };
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-14);
}

double simplex_volume_bound(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dimension must be >= 1");
  const double nn = n;
  return std::exp(0.5 * nn * std::log(nn) + 0.5 * (nn + 1.0) * std::log(nn + 1.0) -
                  boost::math::lgamma(nn + 1.0));
}

double cube_volume_bound(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dimension must be >= 1");
  return std::ldexp(1.0, n);
}

double reverse_isoperimetric_constant(int n, bool symmetric) {
  if (symmetric) return 2.0 * n;
  return n * std::pow(simplex_volume_bound(n), 1.0 / n);
}

}  // namespace johnkit
