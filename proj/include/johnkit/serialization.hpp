#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "johnkit/brascamp_lieb.hpp"
#include "johnkit/john.hpp"
#include "johnkit/lp_spaces.hpp"

namespace johnkit {

// Field order is preserved so reports are stable byte for byte.
using Json = nlohmann::ordered_json;

Json matrix_to_json(const Mat& m);
Json vector_to_json(const Vec& v);
/// Rows of equal length `cols` (any length when cols < 0).
Mat matrix_from_json(const Json& j, int cols = -1);
Vec vector_from_json(const Json& j);

using Polytope = std::variant<HPolytope, VPolytope>;

/// {"dim": n, "kind": "H", "rows": [[a_1..a_n, b], ...]}
Json to_json(const HPolytope& p);
/// {"dim": n, "kind": "V", "rows": [[x_1..x_n], ...]}
Json to_json(const VPolytope& v);
Polytope polytope_from_json(const Json& j);
/// H-representation of either kind (V input is converted).
HPolytope hpolytope_from_json(const Json& j);

Json to_json(const Estimate& e);
Estimate estimate_from_json(const Json& j);

Json to_json(const Ellipsoid& e);
Json to_json(const AffineMap& t);

Json to_json(const JohnDecomposition& d);
JohnDecomposition decomposition_from_json(const Json& j);

Json to_json(const BLSystem& s);
BLSystem bl_system_from_json(const Json& j);

/// {"type": "exponential" | "gaussian" | "indicator" | "table", ...}
Json to_json(const Density1D& d);
Density1D density_from_json(const Json& j);

Json to_json(const SubspaceSpec& s);
SubspaceSpec subspace_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace johnkit
