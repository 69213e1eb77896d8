#include "johnkit/serialization.hpp"

#include <cmath>
#include <fstream>

namespace johnkit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const Json& j) {
  if (!j.is_number()) bad("expected a number");
  return j.get<double>();
}

int integer(const Json& j) {
  if (!j.is_number_integer()) bad("expected an integer");
  return j.get<int>();
}

}  // namespace

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Vec& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Mat matrix_from_json(const Json& j, int cols) {
  if (!j.is_array() || j.empty()) bad("expected a nonempty array of rows");
  if (cols < 0) {
    if (!j[0].is_array()) bad("expected an array of rows");
    cols = static_cast<int>(j[0].size());
  }
  Mat m(static_cast<int>(j.size()), cols);
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) {
      bad("row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    }
    for (int k = 0; k < cols; ++k) m(static_cast<int>(i), k) = number(j[i][k]);
  }
  return m;
}

Vec vector_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array");
  Vec v(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = number(j[i]);
  return v;
}

Json to_json(const HPolytope& p) {
  Mat rows(p.size(), p.dim() + 1);
  rows << p.normals(), p.offsets();
  return {{"dim", p.dim()}, {"kind", "H"}, {"rows", matrix_to_json(rows)}};
}

Json to_json(const VPolytope& v) {
  return {{"dim", v.dim()}, {"kind", "V"}, {"rows", matrix_to_json(v.vertices())}};
}

Polytope polytope_from_json(const Json& j) {
  const int n = integer(field(j, "dim"));
  if (n < 1) bad("dim must be >= 1");
  const Json& kind = field(j, "kind");
  if (kind == "H") {
    const Mat rows = matrix_from_json(field(j, "rows"), n + 1);
    return HPolytope(rows.leftCols(n), rows.col(n));
  }
  if (kind == "V") return VPolytope(matrix_from_json(field(j, "rows"), n));
  bad("kind must be \"H\" or \"V\"");
}

HPolytope hpolytope_from_json(const Json& j) {
  Polytope p = polytope_from_json(j);
  if (auto* h = std::get_if<HPolytope>(&p)) return *h;
  return hrep_from_vrep(std::get<VPolytope>(p));
}

Json to_json(const Estimate& e) {
  return {{"value", e.value}, {"std_error", e.std_error}, {"samples", e.samples}};
}

Estimate estimate_from_json(const Json& j) {
  return {number(field(j, "value")), number(field(j, "std_error")),
          field(j, "samples").get<std::int64_t>()};
}

Json to_json(const Ellipsoid& e) {
  return {{"center", vector_to_json(e.center)}, {"shape", matrix_to_json(e.shape)}};
}

Json to_json(const AffineMap& t) {
  return {{"linear", matrix_to_json(t.linear)}, {"shift", vector_to_json(t.shift)}};
}

Json to_json(const JohnDecomposition& d) {
  return {{"contacts", matrix_to_json(d.contacts)},
          {"weights", vector_to_json(d.weights)},
          {"symmetric", d.symmetric}};
}

JohnDecomposition decomposition_from_json(const Json& j) {
  JohnDecomposition d;
  d.contacts = matrix_from_json(field(j, "contacts"));
  d.weights = vector_from_json(field(j, "weights"));
  const Json& sym = field(j, "symmetric");
  if (!sym.is_boolean()) bad("symmetric must be a boolean");
  d.symmetric = sym.get<bool>();
  if (d.weights.size() != d.contacts.rows()) bad("one weight per contact expected");
  return d;
}

Json to_json(const BLSystem& s) {
  return {{"dim", s.dim()},
          {"vectors", matrix_to_json(s.vectors)},
          {"weights", vector_to_json(s.weights)}};
}

BLSystem bl_system_from_json(const Json& j) {
  const int d = integer(field(j, "dim"));
  if (d < 1) bad("dim must be >= 1");
  BLSystem s{matrix_from_json(field(j, "vectors"), d), vector_from_json(field(j, "weights"))};
  if (s.weights.size() != s.vectors.rows()) bad("one weight per vector expected");
  return s;
}

Json to_json(const Density1D& d) {
  return std::visit(
      [](const auto& k) -> Json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Density1D::Exponential>) {
          return {{"type", "exponential"}};
        } else if constexpr (std::is_same_v<K, Density1D::Gaussian>) {
          return {{"type", "gaussian"}, {"sigma", k.sigma}};
        } else if constexpr (std::is_same_v<K, Density1D::Indicator>) {
          return {{"type", "indicator"}, {"a", k.a}, {"b", k.b}};
        } else {
          return {{"type", "table"}, {"grid", k.grid}, {"values", k.values}};
        }
      },
      d.kind());
}

Density1D density_from_json(const Json& j) {
  const Json& type = field(j, "type");
  if (type == "exponential") return Density1D::exponential();
  if (type == "gaussian") {
    return Density1D::gaussian(j.contains("sigma") ? number(j.at("sigma")) : 1.0);
  }
  if (type == "indicator") return Density1D::indicator(number(field(j, "a")), number(field(j, "b")));
  if (type == "table") {
    const Vec grid = vector_from_json(field(j, "grid"));
    const Vec values = vector_from_json(field(j, "values"));
    return Density1D::table({grid.begin(), grid.end()}, {values.begin(), values.end()});
  }
  bad("unknown density type");
}

Json to_json(const SubspaceSpec& s) {
  Json p = std::isinf(s.p) ? Json("inf") : Json(s.p);
  return {{"m", s.m()}, {"n", s.n()}, {"p", p}, {"basis", matrix_to_json(s.basis)}};
}

SubspaceSpec subspace_from_json(const Json& j) {
  const int m = integer(field(j, "m"));
  const int n = integer(field(j, "n"));
  if (m < 1 || n < 1) bad("m and n must be >= 1");
  const Json& pj = field(j, "p");
  const double p = pj == "inf" ? kInfinity : number(pj);
  const Mat basis = matrix_from_json(field(j, "basis"), n);
  if (basis.rows() != m) bad("basis must have m rows");
  return {basis, p};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad(path + ": " + e.what());
  }
}

}  // namespace johnkit
