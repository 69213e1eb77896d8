#pragma once

#include "johnkit/types.hpp"

namespace johnkit::dd {

/// Vertices of {y : G y <= h} for h > 0 (origin interior), as rows.
///
/// Works on the homogenised cone {(y, t) : G y - h t <= 0, t >= 0} and adds
/// constraints one at a time, generating new extreme rays only from pairs
/// that pass the combinatorial adjacency test. A surviving ray with t = 0
/// means the polyhedron is unbounded.
Mat enumerate_vertices(const Mat& g, const Vec& h, double tol = 1e-10);

}  // namespace johnkit::dd
