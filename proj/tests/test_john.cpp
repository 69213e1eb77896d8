#include <doctest.h>

#include <cmath>
#include <numbers>

#include "johnkit/generators.hpp"
#include "johnkit/john.hpp"
#include "johnkit/brascamp_lieb.hpp"
#include "johnkit/measures.hpp"
#include "support.hpp"

using namespace johnkit;

namespace {

double shape_error(const Ellipsoid& e, const Mat& b, const Vec& d) {
  return std::max((e.shape - b).cwiseAbs().maxCoeff(), (e.center - d).cwiseAbs().maxCoeff());
}

// Slack of the worst constraint |B a_i| + <a_i, d> <= b_i.
double worst_violation(const HPolytope& p, const Ellipsoid& e) {
  double worst = -1e300;
  for (int i = 0; i < p.size(); ++i) {
    const Vec a = p.normal(i);
    worst = std::max(worst, (e.shape * a).norm() + a.dot(e.center) - p.offset(i));
  }
  return worst;
}

HPolytope random_triangle(Rng& rng) {
  Mat v(3, 2);
  for (;;) {
    for (int i = 0; i < 3; ++i) v.row(i) = sample_gaussian(2, rng).transpose();
    const Vec c = v.colwise().mean().transpose();
    v.rowwise() -= c.transpose();
    Mat edges(2, 2);
    edges << v.row(1) - v.row(0), v.row(2) - v.row(0);
    if (std::abs(edges.determinant()) > 0.5) return hrep_from_vrep(VPolytope(v));
  }
}

}  // namespace

TEST_CASE("maximal ellipsoid examples") {
  const EllipsoidSolution cube = solve_max_inscribed_ellipsoid(cube_hrep(3));
  CHECK(shape_error(cube.ellipsoid, Mat::Identity(3, 3), Vec::Zero(3)) <= 1e-7);
  CHECK(std::abs(cube.ellipsoid.shape.determinant() - 1.0) <= 1e-6);
  CHECK(cube.kkt_residual <= 1e-8);

  Vec half(2);
  half << 2, 1;
  const Ellipsoid box = max_inscribed_ellipsoid(box_hrep(half));
  CHECK(shape_error(box, Mat(half.asDiagonal()), Vec::Zero(2)) <= 1e-7);

  const Ellipsoid tri = max_inscribed_ellipsoid(regular_simplex_hrep(2));
  CHECK(shape_error(tri, Mat::Identity(2, 2), Vec::Zero(2)) <= 1e-7);
}

TEST_CASE("the incircle of the triangle is certified by its 120 degree decomposition") {
  const Mat u = contact_points(regular_simplex_hrep(2));
  REQUIRE(u.rows() == 3);
  for (int i = 0; i < 3; ++i) {
    for (int k = i + 1; k < 3; ++k) CHECK(u.row(i).dot(u.row(k)) == doctest::Approx(-0.5));
  }
  const JohnDecomposition d = john_decomposition(u, false);
  for (int i = 0; i < 3; ++i) CHECK(d.weights(i) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(d.residuals().barycenter <= 1e-12);
}

TEST_CASE("solver output stays inside the body and log det increases") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const HPolytope p = random_polytope(3, 100, seed, seed % 2 == 0);
    const EllipsoidSolution s = solve_max_inscribed_ellipsoid(p);
    CHECK(worst_violation(p, s.ellipsoid) <= 1e-9);
    CHECK(s.kkt_residual <= 1e-8);
    for (size_t k = 1; k < s.log_det_trace.size(); ++k) {
      CHECK(s.log_det_trace[k] >= s.log_det_trace[k - 1] - 1e-12);
    }
  }
}

TEST_CASE("unbounded input is rejected") {
  Mat a(3, 2);
  a << 1, 0, 0, 1, -1, 0;
  CHECK_THROWS_WITH_AS(max_inscribed_ellipsoid(HPolytope(a, Vec::Ones(3))),
                       doctest::Contains("unbounded"), Error);
}

TEST_CASE("John position examples") {
  const JohnPosition cube = john_position(cube_hrep(2));
  CHECK((cube.map.linear - Mat::Identity(2, 2)).norm() <= 1e-7);
  CHECK(cube.map.shift.norm() <= 1e-7);

  Vec half(2);
  half << 4, 1;
  const JohnPosition box = john_position(box_hrep(half));
  Mat expected = Mat::Zero(2, 2);
  expected(0, 0) = 0.25;
  expected(1, 1) = 1.0;
  CHECK((box.map.linear - expected).norm() <= 1e-7);
  for (int i = 0; i < box.body.size(); ++i) CHECK(box.body.offset(i) == doctest::Approx(1.0));
}

TEST_CASE("John position is idempotent") {
  Rng rng = batch_engine(17, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const JohnPosition tri = john_position(random_triangle(rng));
    const Ellipsoid again = max_inscribed_ellipsoid(tri.body);
    CHECK(shape_error(again, Mat::Identity(2, 2), Vec::Zero(2)) <= 1e-7);

    const HPolytope cube = apply_affine(cube_hrep(3), random_affine(3, rng));
    const Ellipsoid recube = max_inscribed_ellipsoid(john_position(cube).body);
    CHECK(shape_error(recube, Mat::Identity(3, 3), Vec::Zero(3)) <= 1e-7);
  }
}

TEST_CASE("contact points") {
  const Mat square = contact_points(cube_hrep(2));
  CHECK(square.rows() == 4);
  const Mat cube = contact_points(cube_hrep(3));
  CHECK(cube.rows() == 6);
  Mat axes(6, 3);
  axes << Mat::Identity(3, 3), -Mat::Identity(3, 3);
  CHECK(johnkit::testing::same_point_sets(cube, axes, 1e-12));

  Vec half(2);
  half << 0.5, 1.0;
  CHECK_THROWS_WITH_AS(contact_points(box_hrep(half)), doctest::Contains("John position"), Error);
}

TEST_CASE("decomposition examples") {
  Mat square(4, 2);
  square << 1, 0, -1, 0, 0, 1, 0, -1;
  const JohnDecomposition s = john_decomposition(square, true);
  REQUIRE(s.weights.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(s.weights(i) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.weights.sum() == doctest::Approx(2.0));

  // Minimum-norm choice: only c_+ + c_- = 1 is forced on each axis.
  const JohnDecomposition cube = john_decomposition(contact_points(cube_hrep(3)), true);
  for (int i = 0; i < 6; ++i) CHECK(cube.weights(i) == doctest::Approx(0.5).epsilon(1e-12));

  Mat incomplete(2, 2);
  incomplete << 1, 0, 0, 1;
  CHECK_THROWS_AS(john_decomposition(incomplete, false), Error);
}

TEST_CASE("decompositions of random John-positioned bodies behave like orthonormal bases") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const bool symmetric = seed % 3 == 0;
    const JohnPosition jp = john_position(random_polytope(n, 200, seed, symmetric));
    const JohnDecomposition d = john_decomposition(contact_points(jp.body), symmetric);
    const DecompositionResiduals r = d.residuals();
    CHECK(r.frobenius <= 1e-8);
    CHECK(r.trace_gap <= 1e-8);
    if (!symmetric) CHECK(r.barycenter <= 1e-8);
    CHECK((d.weights.array() > 0.0).all());
    Rng rng = batch_engine(seed, 1);
    for (int k = 0; k < 100; ++k) {
      const Vec x = sample_gaussian(n, rng);
      const Vec t = d.contacts * x;
      CHECK(x.squaredNorm() == doctest::Approx(d.weights.dot(t.cwiseProduct(t))).epsilon(1e-7));
    }
  }
}

TEST_CASE("volume ratio examples and affine invariance") {
  CHECK(volume_ratio(cube_hrep(2)) == doctest::Approx(std::sqrt(4.0 / std::numbers::pi)).epsilon(1e-9));
  CHECK(volume_ratio(regular_simplex_hrep(2)) ==
        doctest::Approx(std::sqrt(3.0 * std::sqrt(3.0) / std::numbers::pi)).epsilon(1e-9));
  // A fine polygon around the disc is nearly an ellipsoid.
  const double disc = volume_ratio(regular_polygon_hrep(400));
  CHECK(disc == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(disc >= 1.0);

  Rng rng = batch_engine(23, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const HPolytope p = random_polytope(3, 300, trial, false);
    const double base = volume_ratio(p);
    CHECK(std::abs(volume_ratio(apply_affine(p, random_affine(3, rng))) - base) <= 1e-6);
  }
}

TEST_CASE("volume of John-positioned bodies respects the extremal bounds") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const bool symmetric = seed % 2 == 1;
    const JohnPosition jp = john_position(random_polytope(n, 400, seed, symmetric));
    const double volume = polytope_volume(vrep_from_hrep(jp.body));
    const double bound = symmetric ? cube_volume_bound(n) : simplex_volume_bound(n);
    CHECK(volume <= bound * (1.0 + 1e-6));
  }
}
