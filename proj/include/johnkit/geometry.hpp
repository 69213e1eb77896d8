#pragma once

#include <functional>
#include <optional>

#include "johnkit/types.hpp"

namespace johnkit {

/// Intersection of half-spaces {x : <a_i, x> <= b_i}. Rows of the normal
/// matrix are rescaled to unit length on construction (offsets follow), and
/// every offset must be strictly positive so the origin is interior.
class HPolytope {
 public:
  HPolytope(Mat normals, Vec offsets);

  int dim() const { return static_cast<int>(normals_.cols()); }
  int size() const { return static_cast<int>(normals_.rows()); }
  const Mat& normals() const { return normals_; }
  const Vec& offsets() const { return offsets_; }
  Vec normal(int i) const { return normals_.row(i).transpose(); }
  double offset(int i) const { return offsets_(i); }

  bool contains(const Vec& x, double slack = 0.0) const;

  /// True when the normals positively span R^n. Solves 2n small LPs.
  bool is_bounded() const;

 private:
  Mat normals_;
  Vec offsets_;
};

/// Convex hull of a finite point set (rows of the matrix are points).
class VPolytope {
 public:
  explicit VPolytope(Mat vertices);

  int dim() const { return static_cast<int>(vertices_.cols()); }
  int size() const { return static_cast<int>(vertices_.rows()); }
  const Mat& vertices() const { return vertices_; }
  Vec vertex(int i) const { return vertices_.row(i).transpose(); }
  Vec centroid() const { return vertices_.colwise().mean().transpose(); }

 private:
  Mat vertices_;
};

/// {B y + d : |y| <= 1} with B symmetric positive definite.
struct Ellipsoid {
  Vec center;
  Mat shape;

  int dim() const { return static_cast<int>(center.size()); }
  double volume() const;
  bool contains(const Vec& x, double slack = 0.0) const;
  static Ellipsoid unit_ball(int n);
};

/// x -> L x + t.
struct AffineMap {
  Mat linear;
  Vec shift;

  int dim() const { return static_cast<int>(shift.size()); }
  Vec operator()(const Vec& x) const { return linear * x + shift; }
  AffineMap inverse() const;
  /// (*this) after `first`: x -> this(first(x)).
  AffineMap compose(const AffineMap& first) const;
  double determinant() const { return linear.determinant(); }

  static AffineMap identity(int n);
};

/// Membership oracle for a convex body contained in R * B_2^n, optionally
/// equipped with its Minkowski gauge.
struct BodyOracle {
  int dim = 0;
  double radius = 0.0;
  std::function<bool(const Vec&)> member;
  std::function<double(const Vec&)> gauge;

  bool has_gauge() const { return static_cast<bool>(gauge); }

  static BodyOracle from_gauge(int n, double radius,
                               std::function<double(const Vec&)> gauge);
  static BodyOracle from_polytope(const HPolytope& p);
  static BodyOracle euclidean_ball(int n);
};

double unit_ball_volume(int n);
double log_unit_ball_volume(int n);

HPolytope apply_affine(const HPolytope& p, const AffineMap& t);
VPolytope apply_affine(const VPolytope& p, const AffineMap& t);

/// Pivot tolerance used by the double-description conversions.
inline constexpr double kConversionTolerance = 1e-10;
inline constexpr int kMaxConversionDim = 6;

VPolytope vrep_from_hrep(const HPolytope& p);
/// Requires the origin to lie in the interior of the hull.
HPolytope hrep_from_vrep(const VPolytope& v);
/// Drops points that are not extreme.
VPolytope canonicalize(const VPolytope& v);

// Standard bodies.
HPolytope cube_hrep(int n, double half_width = 1.0);
HPolytope box_hrep(const Vec& half_widths);
VPolytope cube_vrep(int n, double half_width = 1.0);
VPolytope cross_polytope_vrep(int n);
/// Regular simplex circumscribing the unit ball, centroid at the origin.
HPolytope regular_simplex_hrep(int n);
/// Unit vectors of a regular simplex centred at the origin (rows).
Mat regular_simplex_directions(int n);
/// Regular polygon with `sides` edges circumscribing the disc of `radius`.
HPolytope regular_polygon_hrep(int sides, double radius = 1.0);

}  // namespace johnkit
