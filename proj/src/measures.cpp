#include "johnkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "johnkit/hull.hpp"

namespace johnkit {

double polytope_volume(const VPolytope& v) {
  const Hull hull = compute_hull(v);
  std::vector<int> all(hull.vertices.rows());
  std::iota(all.begin(), all.end(), 0);
  double total = 0.0;
  for (const Mat& s : triangulate_face(hull, all, hull.dim())) total += simplex_volume(s);
  return total;
}

double surface_area(const VPolytope& v) {
  const Hull hull = compute_hull(v);
  double total = 0.0;
  for (const auto& facet : hull.incidence) {
    for (const Mat& s : triangulate_face(hull, facet, hull.dim() - 1)) total += simplex_volume(s);
  }
  return total;
}

double isoperimetric_quotient(const VPolytope& v) {
  const int n = v.dim();
  return surface_area(v) / std::pow(polytope_volume(v), (n - 1.0) / n);
}

Estimate mc_volume(const BodyOracle& body, const McParams& mc) {
  if (!(body.radius > 0.0) || !std::isfinite(body.radius)) {
    throw Error(ErrorKind::InvalidInput, "bounding radius must be positive and finite");
  }
  const int n = body.dim;
  const double box = std::pow(2.0 * body.radius, n);
  const Moments hits = run_batches(mc, [&](Rng& rng) {
    return body.member(sample_box(n, body.radius, rng)) ? 1.0 : 0.0;
  });
  const double p = hits.mean();
  const double count = static_cast<double>(hits.count);
  return {box * p, box * std::sqrt(p * (1.0 - p) / count), hits.count};
}

namespace {

double cross(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
}

// Area of the convex hull of planar points (monotone chain + shoelace).
double planar_hull_area(std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  const int k = static_cast<int>(pts.size());
  if (k < 3) return 0.0;
  std::vector<Eigen::Vector2d> chain(2 * k);
  int h = 0;
  for (int i = 0; i < k; ++i) {
    while (h >= 2 && cross(chain[h - 2], chain[h - 1], pts[i]) <= 0.0) --h;
    chain[h++] = pts[i];
  }
  for (int i = k - 2, lower = h + 1; i >= 0; --i) {
    while (h >= lower && cross(chain[h - 2], chain[h - 1], pts[i]) <= 0.0) --h;
    chain[h++] = pts[i];
  }
  double area = 0.0;
  for (int i = 0; i + 1 < h; ++i) {
    area += chain[i].x() * chain[i + 1].y() - chain[i + 1].x() * chain[i].y();
  }
  return 0.5 * std::abs(area);
}

// Orthonormal basis of theta^perp as columns.
Mat complement_basis(const Vec& theta) {
  const int n = static_cast<int>(theta.size());
  Mat seed(n, n);
  seed.col(0) = theta;
  // Coordinate axes except the one most aligned with theta.
  int drop = 0;
  theta.cwiseAbs().maxCoeff(&drop);
  int col = 1;
  for (int i = 0; i < n; ++i) {
    if (i == drop) continue;
    seed.col(col++) = Mat::Identity(n, n).col(i);
  }
  Eigen::HouseholderQR<Mat> qr(seed);
  const Mat q = qr.householderQ();
  return q.rightCols(n - 1);
}

double exact_projection(const Mat& vertices, const Vec& theta) {
  const int n = static_cast<int>(theta.size());
  if (n == 2) {
    const Eigen::Vector2d perp(-theta(1), theta(0));
    const Vec s = vertices * perp;
    return s.maxCoeff() - s.minCoeff();
  }
  const Mat q = complement_basis(theta);
  const Mat proj = vertices * q;
  std::vector<Eigen::Vector2d> pts(proj.rows());
  for (int i = 0; i < proj.rows(); ++i) pts[i] = proj.row(i).transpose();
  return planar_hull_area(std::move(pts));
}

void require_unit(const Vec& theta) {
  if (std::abs(theta.norm() - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidInput, "projection direction must be a unit vector");
  }
}

}  // namespace

ProjectionArea projection_area(const VPolytope& v, const Vec& theta, const McParams& fallback) {
  const int n = v.dim();
  if (theta.size() != n) throw Error(ErrorKind::InvalidInput, "direction dimension mismatch");
  require_unit(theta);
  if (n == 1) return {1.0, 0.0, true};
  if (n <= 3) return {exact_projection(v.vertices(), theta), 0.0, true};

  // Shadow membership: y in theta^perp is covered iff the line y + s theta
  // meets every half-space of the hull.
  const Hull hull = compute_hull(v);
  const Mat q = complement_basis(theta);
  const Vec slope = hull.normals * theta;
  const double radius = hull.vertices.rowwise().norm().maxCoeff();
  const Moments hits = run_batches(fallback, [&](Rng& rng) {
    const Vec x = q * sample_box(n - 1, radius, rng);
    const Vec room = hull.offsets - hull.normals * x;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int f = 0; f < slope.size(); ++f) {
      if (slope(f) > 1e-14) {
        hi = std::min(hi, room(f) / slope(f));
      } else if (slope(f) < -1e-14) {
        lo = std::max(lo, room(f) / slope(f));
      } else if (room(f) < 0.0) {
        return 0.0;
      }
    }
    return lo <= hi ? 1.0 : 0.0;
  });
  const double box = std::pow(2.0 * radius, n - 1);
  const double p = hits.mean();
  return {box * p, box * std::sqrt(p * (1.0 - p) / hits.count), false};
}

double cauchy_constant(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "Cauchy constant needs n >= 2");
  return n * unit_ball_volume(n) / unit_ball_volume(n - 1);
}

namespace {

void require_low_dim(const VPolytope& v) {
  if (v.dim() != 2 && v.dim() != 3) {
    throw Error(ErrorKind::Unsupported, "spherical projection averages need n in {2, 3}");
  }
}

}  // namespace

Estimate cauchy_surface_area(const VPolytope& v, const McParams& mc) {
  require_low_dim(v);
  const int n = v.dim();
  const Mat verts = canonicalize(v).vertices();
  const Estimate mean = run_batches(mc, [&](Rng& rng) {
    return exact_projection(verts, sample_sphere(n, rng));
  }).estimate();
  const double k = cauchy_constant(n);
  return {k * mean.value, k * mean.std_error, mean.samples};
}

Estimate petty_functional(const VPolytope& v, const McParams& mc) {
  require_low_dim(v);
  const int n = v.dim();
  const VPolytope canon = canonicalize(v);
  const Mat& verts = canon.vertices();
  const double volume = polytope_volume(canon);
  const Estimate inner = run_batches(mc, [&](Rng& rng) {
    return std::pow(exact_projection(verts, sample_sphere(n, rng)), -static_cast<double>(n));
  }).estimate();
  const double value = std::pow(std::pow(volume, n - 1.0) * inner.value, -1.0 / n);
  const double se = value / (n * inner.value) * inner.std_error;
  return {value, se, inner.samples};
}

}  // namespace johnkit
