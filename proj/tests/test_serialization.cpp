#include <doctest.h>

#include "johnkit/generators.hpp"
#include "johnkit/serialization.hpp"

using namespace johnkit;

namespace {

Json reparse(const Json& j) { return Json::parse(j.dump()); }

}  // namespace

TEST_CASE("doubles survive a text round trip exactly") {
  Rng rng = batch_engine(1, 0);
  const Mat m = Eigen::Map<const Mat>(sample_gaussian(12, rng).data(), 4, 3) * 1e-3;
  CHECK(matrix_from_json(reparse(matrix_to_json(m))) == m);
  const Vec v = sample_gaussian(5, rng) * 1e7;
  CHECK(vector_from_json(reparse(vector_to_json(v))) == v);
  CHECK(Json(0.1).dump() == "0.1");
}

TEST_CASE("polytopes round trip") {
  const VPolytope v = vrep_from_hrep(random_polytope(3, 5, 0, false));
  const Polytope back = polytope_from_json(reparse(to_json(v)));
  REQUIRE(std::holds_alternative<VPolytope>(back));
  CHECK(std::get<VPolytope>(back).vertices() == v.vertices());

  const HPolytope h = random_polytope(3, 5, 1, true);
  const HPolytope hb = hpolytope_from_json(reparse(to_json(h)));
  CHECK((hb.normals() - h.normals()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((hb.offsets() - h.offsets()).cwiseAbs().maxCoeff() <= 1e-15);

  const Json j = to_json(cube_hrep(2));
  CHECK(j.dump() == R"({"dim":2,"kind":"H","rows":[[1.0,0.0,1.0],[-1.0,0.0,1.0],[0.0,1.0,1.0],[0.0,-1.0,1.0]]})");

  // V input converts to H.
  CHECK(hpolytope_from_json(to_json(cube_vrep(2))).size() == 4);
}

TEST_CASE("records round trip") {
  const Estimate e{1.2345678901234567, 3.1e-5, 1000000};
  const Estimate eb = estimate_from_json(reparse(to_json(e)));
  CHECK(eb.value == e.value);
  CHECK(eb.std_error == e.std_error);
  CHECK(eb.samples == e.samples);

  Rng rng = batch_engine(2, 0);
  const BLSystem s = system_from_frame(Eigen::Map<const Mat>(sample_gaussian(10, rng).data(), 5, 2));
  const BLSystem sb = bl_system_from_json(reparse(to_json(s)));
  CHECK(sb.vectors == s.vectors);
  CHECK(sb.weights == s.weights);

  const JohnDecomposition d{s.vectors, s.weights, false};
  const JohnDecomposition db = decomposition_from_json(reparse(to_json(d)));
  CHECK(db.contacts == d.contacts);
  CHECK(db.weights == d.weights);
  CHECK_FALSE(db.symmetric);

  const SubspaceSpec sub{Eigen::Map<const Mat>(sample_gaussian(8, rng).data(), 4, 2), kInfinity};
  const SubspaceSpec subb = subspace_from_json(reparse(to_json(sub)));
  CHECK(subb.basis == sub.basis);
  CHECK(subb.p == kInfinity);
  CHECK(to_json(sub)["p"] == "inf");

  for (const Density1D& f : {Density1D::exponential(), Density1D::gaussian(0.7), Density1D::indicator(-1, 2),
                             Density1D::table({0.0, 0.5, 2.0}, {0.0, 1.5, 0.0})}) {
    const Density1D fb = density_from_json(reparse(to_json(f)));
    CHECK(fb.tag() == f.tag());
    CHECK(fb.integral() == f.integral());
    for (double t : {-0.5, 0.1, 0.7, 1.9}) CHECK(fb(t) == f(t));
  }
  CHECK(density_from_json(Json::parse(R"({"type":"gaussian"})")).integral() == doctest::Approx(1.0));

  const Json ell = to_json(Ellipsoid{Vec::Zero(2), Mat::Identity(2, 2)});
  CHECK(ell.dump() == R"({"center":[0.0,0.0],"shape":[[1.0,0.0],[0.0,1.0]]})");
}

TEST_CASE("malformed input is rejected") {
  auto invalid = [](const char* text) { return Json::parse(text); };
  CHECK_THROWS_WITH_AS(polytope_from_json(invalid(R"({"dim":2,"kind":"H","rows":[[1,0]]})")),
                       doctest::Contains("row 0 must have 3 entries"), Error);
  CHECK_THROWS_WITH_AS(polytope_from_json(invalid(R"({"kind":"H","rows":[[1,0,1]]})")),
                       doctest::Contains("missing field \"dim\""), Error);
  CHECK_THROWS_AS(polytope_from_json(invalid(R"({"dim":2,"kind":"X","rows":[[1,0,1]]})")), Error);
  CHECK_THROWS_AS(polytope_from_json(invalid(R"({"dim":2,"kind":"H","rows":[[1,"a",1]]})")), Error);
  CHECK_THROWS_AS(polytope_from_json(invalid(R"({"dim":0,"kind":"V","rows":[[1]]})")), Error);
  CHECK_THROWS_AS(polytope_from_json(invalid(R"([1,2,3])")), Error);
  CHECK_THROWS_AS(density_from_json(invalid(R"({"type":"cauchy"})")), Error);
  CHECK_THROWS_AS(subspace_from_json(invalid(R"({"m":3,"n":1,"p":1,"basis":[[1],[2]]})")), Error);
  CHECK_THROWS_AS(bl_system_from_json(invalid(R"({"dim":2,"vectors":[[1,0]],"weights":[1,1]})")), Error);
  CHECK_THROWS_AS(decomposition_from_json(invalid(R"({"contacts":[[1,0]],"weights":[1],"symmetric":1})")),
                  Error);
  CHECK_THROWS_WITH_AS(read_json_file("/nonexistent/file.json"), doctest::Contains("cannot open"), Error);
}
