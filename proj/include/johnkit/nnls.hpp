#pragma once

#include <optional>

#include "johnkit/types.hpp"

namespace johnkit {

/// argmin ||A x - b|| subject to x >= 0 (Lawson-Hanson active set).
Vec nnls(const Mat& a, const Vec& b, double tol = 1e-12);

/// Least-distance programming: argmin ||z|| subject to G z >= h, reduced to
/// a single NNLS solve. Empty when the constraints are infeasible.
std::optional<Vec> least_distance(const Mat& g, const Vec& h, double tol = 1e-12);

}  // namespace johnkit
