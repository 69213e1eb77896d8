#pragma once

#include "johnkit/geometry.hpp"
#include "johnkit/sampling.hpp"

namespace johnkit {

/// Exact volume: fan triangulation from the vertex centroid over the
/// recursively triangulated facets.
double polytope_volume(const VPolytope& v);

/// Sum of the (n-1)-volumes of the facets.
double surface_area(const VPolytope& v);

/// surface_area / volume^{(n-1)/n}; equals 2n for cubes.
double isoperimetric_quotient(const VPolytope& v);

/// Hit-or-miss estimate over [-R, R]^n.
Estimate mc_volume(const BodyOracle& body, const McParams& mc);

struct ProjectionArea {
  double value = 0.0;
  double std_error = 0.0;
  /// False when the value came from the Monte Carlo fallback (n >= 4).
  bool exact = true;
};

/// (n-1)-volume of the orthogonal projection onto theta^perp. Exact for
/// n in {2, 3}; a hit-or-miss estimate (flagged) otherwise.
ProjectionArea projection_area(const VPolytope& v, const Vec& theta,
                               const McParams& fallback = {});

/// (n v_n / v_{n-1}) * spherical mean of the projection areas.
Estimate cauchy_surface_area(const VPolytope& v, const McParams& mc);

/// (|C|^{n-1} * mean_theta |P_theta C|^{-n})^{-1/n}; standard error by the
/// delta method on the inner mean.
Estimate petty_functional(const VPolytope& v, const McParams& mc);

/// n v_n / v_{n-1}, the Cauchy-formula constant.
double cauchy_constant(int n);

}  // namespace johnkit
