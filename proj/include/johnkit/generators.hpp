#pragma once

#include "johnkit/geometry.hpp"
#include "johnkit/sampling.hpp"

namespace johnkit {

/// Random bounded polytope around the origin: m in [3n, 6n] half-spaces,
/// each tangent to a sphere of radius uniform in [1, 2] at a uniform random
/// direction. The symmetric variant also adds the mirror of every half-space.
/// Unbounded draws are redrawn up to `max_attempts` times.
HPolytope random_polytope(int n, Rng& rng, bool symmetric, int max_attempts = 10);

/// Same, with the engine for body `index` of a run seeded with `seed`.
HPolytope random_polytope(int n, std::uint64_t seed, std::uint64_t index, bool symmetric);

/// Random invertible affine map with singular values in [0.5, 2] and a shift
/// of norm at most 0.2, so images of bodies containing B_2^n keep the origin
/// in their interior.
AffineMap random_affine(int n, Rng& rng);

}  // namespace johnkit
