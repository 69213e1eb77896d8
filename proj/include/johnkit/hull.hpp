#pragma once

#include <vector>

#include "johnkit/geometry.hpp"

namespace johnkit {

/// Facet structure of a full-dimensional V-polytope: irredundant vertices,
/// unit outer normals with offsets (<a_f, x> <= b_f, offsets may have any
/// sign), and the vertex indices lying on each facet.
struct Hull {
  Mat vertices;
  Mat normals;
  Vec offsets;
  std::vector<std::vector<int>> incidence;

  int dim() const { return static_cast<int>(vertices.cols()); }
  int facet_count() const { return static_cast<int>(normals.rows()); }
};

Hull compute_hull(const VPolytope& v);

/// Fan triangulation of the face spanned by `face` (vertex indices, affine
/// dimension `k`), coned recursively from vertex centroids. Each simplex is
/// returned as k + 1 points (rows).
std::vector<Mat> triangulate_face(const Hull& hull, const std::vector<int>& face, int k);

/// k-volume of a k-simplex given as k + 1 rows in R^n (Gram determinant).
double simplex_volume(const Mat& simplex);

/// Affine dimension of a point set (rows).
int affine_dimension(const Mat& points, double tol = 1e-9);

}  // namespace johnkit
