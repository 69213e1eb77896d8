#include "johnkit/geometry.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "johnkit/double_description.hpp"
#include "johnkit/hull.hpp"
#include "johnkit/linprog.hpp"

namespace johnkit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::Unbounded: return "unbounded";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::NotConverged: return "not converged";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "error";
}

HPolytope::HPolytope(Mat normals, Vec offsets)
    : normals_(std::move(normals)), offsets_(std::move(offsets)) {
  if (normals_.rows() != offsets_.size()) {
    throw Error(ErrorKind::InvalidInput, "normal/offset count mismatch");
  }
  if (normals_.cols() < 1 || normals_.rows() < 1) {
    throw Error(ErrorKind::InvalidInput, "empty half-space description");
  }
  for (int i = 0; i < normals_.rows(); ++i) {
    const double len = normals_.row(i).norm();
    if (!(len > 0.0) || !std::isfinite(len)) {
      throw Error(ErrorKind::InvalidInput, "zero or non-finite normal");
    }
    normals_.row(i) /= len;
    offsets_(i) /= len;
    if (!(offsets_(i) > 0.0)) {
      throw Error(ErrorKind::InvalidInput, "offsets must be positive (origin interior)");
    }
  }
}

bool HPolytope::contains(const Vec& x, double slack) const {
  return ((normals_ * x - offsets_).array() <= slack).all();
}

bool HPolytope::is_bounded() const {
  const int n = dim();
  for (int j = 0; j < n; ++j) {
    for (double sign : {1.0, -1.0}) {
      Vec c = Vec::Zero(n);
      c(j) = sign;
      if (lp::maximize(c, normals_, offsets_).status == lp::Status::Unbounded) return false;
    }
  }
  return true;
}

VPolytope::VPolytope(Mat vertices) : vertices_(std::move(vertices)) {
  if (vertices_.rows() < 1 || vertices_.cols() < 1) {
    throw Error(ErrorKind::InvalidInput, "empty vertex list");
  }
  if (!vertices_.allFinite()) throw Error(ErrorKind::InvalidInput, "non-finite vertex");
}

double Ellipsoid::volume() const { return unit_ball_volume(dim()) * shape.determinant(); }

bool Ellipsoid::contains(const Vec& x, double slack) const {
  return shape.ldlt().solve(x - center).norm() <= 1.0 + slack;
}

Ellipsoid Ellipsoid::unit_ball(int n) { return {Vec::Zero(n), Mat::Identity(n, n)}; }

AffineMap AffineMap::inverse() const {
  Eigen::PartialPivLU<Mat> lu(linear);
  const Mat inv = lu.inverse();
  return {inv, -inv * shift};
}

AffineMap AffineMap::compose(const AffineMap& first) const {
  return {linear * first.linear, linear * first.shift + shift};
}

AffineMap AffineMap::identity(int n) { return {Mat::Identity(n, n), Vec::Zero(n)}; }

BodyOracle BodyOracle::from_gauge(int n, double radius,
                                  std::function<double(const Vec&)> gauge) {
  BodyOracle b;
  b.dim = n;
  b.radius = radius;
  b.gauge = gauge;
  b.member = [g = std::move(gauge)](const Vec& x) { return g(x) <= 1.0; };
  return b;
}

BodyOracle BodyOracle::from_polytope(const HPolytope& p) {
  const VPolytope v = vrep_from_hrep(p);
  BodyOracle b;
  b.dim = p.dim();
  b.radius = v.vertices().rowwise().norm().maxCoeff();
  b.member = [p](const Vec& x) { return p.contains(x); };
  // Offsets are positive, so the gauge is max_i <a_i, x> / b_i.
  b.gauge = [p](const Vec& x) {
    return std::max(0.0, (p.normals() * x).cwiseQuotient(p.offsets()).maxCoeff());
  };
  return b;
}

BodyOracle BodyOracle::euclidean_ball(int n) {
  return from_gauge(n, 1.0, [](const Vec& x) { return x.norm(); });
}

double log_unit_ball_volume(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dimension must be >= 1");
  return 0.5 * n * std::log(std::numbers::pi) - boost::math::lgamma(1.0 + 0.5 * n);
}

double unit_ball_volume(int n) { return std::exp(log_unit_ball_volume(n)); }

namespace {

void require_invertible(const AffineMap& t, int n) {
  if (t.linear.rows() != n || t.linear.cols() != n || t.shift.size() != n) {
    throw Error(ErrorKind::InvalidInput, "affine map dimension mismatch");
  }
  const double scale = std::pow(std::max(1e-300, t.linear.norm()), n);
  if (std::abs(t.linear.determinant()) <= 1e-14 * scale) {
    throw Error(ErrorKind::Singular, "affine map has singular linear part");
  }
}

}  // namespace

HPolytope apply_affine(const HPolytope& p, const AffineMap& t) {
  require_invertible(t, p.dim());
  // <a, x> <= b with x = L^{-1}(y - s) becomes <L^{-T} a, y> <= b + <L^{-T} a, s>.
  const Mat linv = t.linear.partialPivLu().inverse();
  const Mat normals = p.normals() * linv;
  const Vec offsets = p.offsets() + normals * t.shift;
  return HPolytope(normals, offsets);
}

VPolytope apply_affine(const VPolytope& p, const AffineMap& t) {
  require_invertible(t, p.dim());
  Mat image = (p.vertices() * t.linear.transpose()).rowwise() + t.shift.transpose();
  return VPolytope(std::move(image));
}

VPolytope vrep_from_hrep(const HPolytope& p) {
  if (p.dim() > kMaxConversionDim) {
    throw Error(ErrorKind::Unsupported, "exact conversion limited to n <= 6");
  }
  return VPolytope(dd::enumerate_vertices(p.normals(), p.offsets(), kConversionTolerance));
}

HPolytope hrep_from_vrep(const VPolytope& v) {
  const Hull hull = compute_hull(v);
  if ((hull.offsets.array() <= 0.0).any()) {
    throw Error(ErrorKind::InvalidInput, "origin is not interior to the hull");
  }
  return HPolytope(hull.normals, hull.offsets);
}

VPolytope canonicalize(const VPolytope& v) { return VPolytope(compute_hull(v).vertices); }

HPolytope cube_hrep(int n, double half_width) {
  return box_hrep(Vec::Constant(n, half_width));
}

HPolytope box_hrep(const Vec& half_widths) {
  const int n = static_cast<int>(half_widths.size());
  Mat a = Mat::Zero(2 * n, n);
  Vec b(2 * n);
  for (int i = 0; i < n; ++i) {
    a(2 * i, i) = 1.0;
    a(2 * i + 1, i) = -1.0;
    b(2 * i) = b(2 * i + 1) = half_widths(i);
  }
  return HPolytope(a, b);
}

VPolytope cube_vrep(int n, double half_width) {
  const int count = 1 << n;
  Mat v(count, n);
  for (int k = 0; k < count; ++k) {
    for (int i = 0; i < n; ++i) v(k, i) = ((k >> i) & 1) ? half_width : -half_width;
  }
  return VPolytope(v);
}

VPolytope cross_polytope_vrep(int n) {
  Mat v = Mat::Zero(2 * n, n);
  for (int i = 0; i < n; ++i) {
    v(2 * i, i) = 1.0;
    v(2 * i + 1, i) = -1.0;
  }
  return VPolytope(v);
}

Mat regular_simplex_directions(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dimension must be >= 1");
  // Orthonormal basis of the complement of (1, ..., 1) in R^{n+1}; its rows
  // are the centred standard basis vectors written in that basis.
  Mat seed = Mat::Identity(n + 1, n + 1);
  seed.col(0).setOnes();
  Eigen::HouseholderQR<Mat> qr(seed);
  const Mat q = qr.householderQ();
  Mat dirs = q.rightCols(n);
  for (int i = 0; i <= n; ++i) dirs.row(i).normalize();
  return dirs;
}

HPolytope regular_simplex_hrep(int n) {
  return HPolytope(regular_simplex_directions(n), Vec::Ones(n + 1));
}

HPolytope regular_polygon_hrep(int sides, double radius) {
  if (sides < 3) throw Error(ErrorKind::InvalidInput, "polygon needs >= 3 sides");
  Mat a(sides, 2);
  for (int k = 0; k < sides; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / sides;
    a(k, 0) = std::cos(angle);
    a(k, 1) = std::sin(angle);
  }
  return HPolytope(a, Vec::Constant(sides, radius));
}

}  // namespace johnkit
