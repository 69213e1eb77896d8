#include <doctest.h>

#include <cmath>
#include <numbers>

#include "johnkit/double_description.hpp"
#include "johnkit/generators.hpp"
#include "johnkit/geometry.hpp"
#include "johnkit/linprog.hpp"
#include "johnkit/sampling.hpp"
#include "support.hpp"

using namespace johnkit;
using johnkit::testing::brute_force_vertices;
using johnkit::testing::same_point_sets;

namespace {

HPolytope random_hpolytope(int n, int m, Rng& rng) {
  for (;;) {
    Mat a(m, n);
    Vec b(m);
    for (int i = 0; i < m; ++i) {
      a.row(i) = sample_sphere(n, rng).transpose();
      b(i) = 1.0 + std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }
    HPolytope p(a, b);
    if (p.is_bounded()) return p;
  }
}

}  // namespace

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
  for (int n = 3; n <= 60; ++n) {
    CHECK(unit_ball_volume(n) ==
          doctest::Approx(2.0 * std::numbers::pi * unit_ball_volume(n - 2) / n).epsilon(1e-12));
  }
  CHECK_THROWS_AS(unit_ball_volume(0), Error);
}

TEST_CASE("HPolytope normalises rows and rejects bad input") {
  Mat a(2, 2);
  a << 3, 4, 0, -2;
  Vec b(2);
  b << 10, 4;
  // Unbounded but constructible: boundedness is a separate query.
  const HPolytope p(a, b);
  CHECK(p.normal(0).norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.offset(0) == doctest::Approx(2.0));
  CHECK(p.offset(1) == doctest::Approx(2.0));
  CHECK_FALSE(p.is_bounded());
  CHECK(cube_hrep(3).is_bounded());

  b(1) = 0.0;
  CHECK_THROWS_AS(HPolytope(a, b), Error);
  Mat zero = Mat::Zero(1, 2);
  CHECK_THROWS_AS(HPolytope(zero, Vec::Ones(1)), Error);
}

TEST_CASE("apply_affine examples") {
  const HPolytope cube = cube_hrep(2);
  const HPolytope same = apply_affine(cube, AffineMap::identity(2));
  CHECK(same_point_sets(vrep_from_hrep(same).vertices(), vrep_from_hrep(cube).vertices(), 1e-12));

  AffineMap scale = AffineMap::identity(2);
  scale.linear(0, 0) = 2.0;
  const VPolytope box = vrep_from_hrep(apply_affine(cube, scale));
  Mat expected(4, 2);
  expected << 2, 1, -2, 1, 2, -1, -2, -1;
  CHECK(same_point_sets(box.vertices(), expected, 1e-12));

  Mat l(2, 2);
  l << 1.3, 0.4, -0.2, 0.7;
  Vec t(2);
  t << 0.1, -0.3;
  const AffineMap map{l, t};
  const VPolytope tri = vrep_from_hrep(regular_simplex_hrep(2));
  const VPolytope back = apply_affine(apply_affine(tri, map), map.inverse());
  CHECK((back.vertices() - tri.vertices()).norm() <= 1e-12);

  const HPolytope htri = regular_simplex_hrep(2);
  const HPolytope hback = apply_affine(apply_affine(htri, map), map.inverse());
  CHECK((hback.normals() - htri.normals()).norm() <= 1e-12);
  CHECK((hback.offsets() - htri.offsets()).norm() <= 1e-12);

  AffineMap singular{Mat::Zero(2, 2), Vec::Zero(2)};
  CHECK_THROWS_AS(apply_affine(cube, singular), Error);
}

TEST_CASE("affine maps compose and invert") {
  Rng rng = batch_engine(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const AffineMap f = random_affine(3, rng);
    const AffineMap g = random_affine(3, rng);
    const Vec x = sample_gaussian(3, rng);
    CHECK((g.compose(f)(x) - g(f(x))).norm() <= 1e-12);
    CHECK((f.inverse()(f(x)) - x).norm() <= 1e-10);
  }
}

TEST_CASE("H to V conversions on standard bodies") {
  const VPolytope cube = vrep_from_hrep(cube_hrep(3));
  CHECK(cube.size() == 8);
  CHECK(same_point_sets(cube.vertices(), cube_vrep(3).vertices(), 1e-12));

  const Mat s = std::sqrt(3.0) * Mat(Eigen::Matrix<double, 3, 2>{{0, 2 / std::sqrt(3.0)},
                                                                    {-1, -1 / std::sqrt(3.0)},
                                                                    {1, -1 / std::sqrt(3.0)}});
  const HPolytope tri = hrep_from_vrep(VPolytope(s));
  CHECK(tri.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(tri.offset(i) == doctest::Approx(1.0).epsilon(1e-12));

  const HPolytope cross = hrep_from_vrep(cross_polytope_vrep(3));
  CHECK(cross.size() == 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(cross.offset(i) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(cross.normal(i).cwiseAbs().minCoeff() == doctest::Approx(1.0 / std::sqrt(3.0)));
  }
}

TEST_CASE("double description agrees with brute-force vertex enumeration") {
  Rng rng = batch_engine(21, 0);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const HPolytope p = random_hpolytope(n, 3 * n + trial, rng);
      const Mat dd = vrep_from_hrep(p).vertices();
      const Mat brute = brute_force_vertices(p.normals(), p.offsets());
      CHECK(same_point_sets(dd, brute, 1e-7));
    }
  }
}

TEST_CASE("round trips preserve membership") {
  Rng rng = batch_engine(5, 0);
  for (int n = 2; n <= 4; ++n) {
    const HPolytope p = random_hpolytope(n, 4 * n, rng);
    const VPolytope v = vrep_from_hrep(p);
    const HPolytope back = hrep_from_vrep(v);
    int mismatches = 0;
    for (int k = 0; k < 1000; ++k) {
      const Vec x = sample_box(n, 2.5, rng);
      // Points within 1e-9 of the boundary may legitimately disagree.
      const double margin = ((p.normals() * x) - p.offsets()).maxCoeff();
      if (std::abs(margin) < 1e-9) continue;
      const bool h = p.contains(x);
      if (h != back.contains(x, 1e-9)) ++mismatches;
      if (h != lp::in_convex_hull(v.vertices(), x)) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("conversion errors") {
  Mat a(3, 2);
  a << 1, 0, 0, 1, -1, 0;
  CHECK_THROWS_WITH_AS(vrep_from_hrep(HPolytope(a, Vec::Ones(3))), doctest::Contains("unbounded"),
                       Error);
  Mat flat(3, 2);
  flat << -1, 0, 1, 0, 2, 0;
  CHECK_THROWS_AS(hrep_from_vrep(VPolytope(flat)), Error);
  CHECK_THROWS_AS(vrep_from_hrep(cube_hrep(7)), Error);
}

TEST_CASE("canonicalize drops interior points") {
  Mat pts(6, 2);
  pts << 1, 1, -1, 1, -1, -1, 1, -1, 0, 0, 0.5, 0.2;
  const VPolytope c = canonicalize(VPolytope(pts));
  CHECK(c.size() == 4);
}

TEST_CASE("linear programs") {
  Mat a(3, 2);
  a << 1, 0, 0, 1, -1, -1;
  Vec b(3);
  b << 1, 2, 0;
  Vec c(2);
  c << 1, 1;
  const lp::Result r = lp::maximize(c, a, b);
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.value == doctest::Approx(3.0));

  Mat ai(2, 1);
  ai << 1, -1;
  Vec bi(2);
  bi << -1, -1;  // x <= -1 and x >= 1
  CHECK(lp::maximize(Vec::Ones(1), ai, bi).status == lp::Status::Infeasible);

  Mat au(1, 2);
  au << 1, 0;
  CHECK(lp::maximize(c, au, Vec::Ones(1)).status == lp::Status::Unbounded);

  const lp::ChebyshevBall ball = lp::chebyshev_ball(cube_hrep(2).normals(), cube_hrep(2).offsets());
  CHECK(ball.radius == doctest::Approx(1.0));
  CHECK(ball.center.norm() <= 1e-9);
}

TEST_CASE("ellipsoids and body oracles") {
  Ellipsoid e{Vec::Zero(2), Mat(Eigen::Matrix2d{{2, 0}, {0, 1}})};
  CHECK(e.volume() == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(e.contains(Eigen::Vector2d(1.9, 0.0)));
  CHECK_FALSE(e.contains(Eigen::Vector2d(0.0, 1.1)));

  const BodyOracle cube = BodyOracle::from_polytope(cube_hrep(3));
  CHECK(cube.radius == doctest::Approx(std::sqrt(3.0)));
  Rng rng = batch_engine(9, 0);
  for (int k = 0; k < 500; ++k) {
    const Vec x = sample_box(3, 1.5, rng);
    const Vec y = sample_box(3, 1.5, rng);
    CHECK(cube.member(x) == (cube.gauge(x) <= 1.0));
    if (cube.member(x) && cube.member(y)) CHECK(cube.member(0.5 * (x + y)));
  }
}

TEST_CASE("log unit ball volume in high dimension") {
  // Stirling series for log Gamma(1 + n/2) as an independent oracle.
  for (int n : {100, 150, 200}) {
    const double x = 1.0 + 0.5 * n;
    const double lgamma = (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
                          1.0 / (12.0 * x) - 1.0 / (360.0 * x * x * x);
    const double expected = 0.5 * n * std::log(std::numbers::pi) - lgamma;
    CHECK(log_unit_ball_volume(n) == doctest::Approx(expected).epsilon(1e-13));
  }
}
