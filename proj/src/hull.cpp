#include "johnkit/hull.hpp"

#include <algorithm>
#include <set>

#include "johnkit/double_description.hpp"

namespace johnkit {

int affine_dimension(const Mat& points, double tol) {
  if (points.rows() <= 1) return 0;
  Mat diffs = points.bottomRows(points.rows() - 1).rowwise() - points.row(0);
  const double scale = std::max(1.0, diffs.cwiseAbs().maxCoeff());
  Eigen::ColPivHouseholderQR<Mat> qr(diffs / scale);
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

Hull compute_hull(const VPolytope& v) {
  const int n = v.dim();
  if (n < 1 || n > kMaxConversionDim) {
    throw Error(ErrorKind::Unsupported, "hull computation supports 1 <= n <= 6");
  }

  // Merge coincident input points.
  std::vector<Vec> unique;
  const double extent = 1.0 + v.vertices().cwiseAbs().maxCoeff();
  for (int i = 0; i < v.size(); ++i) {
    const Vec p = v.vertex(i);
    const bool seen = std::any_of(unique.begin(), unique.end(), [&](const Vec& q) {
      return (p - q).norm() <= 1e-12 * extent;
    });
    if (!seen) unique.push_back(p);
  }
  Mat pts(static_cast<int>(unique.size()), n);
  for (int i = 0; i < pts.rows(); ++i) pts.row(i) = unique[i].transpose();
  if (affine_dimension(pts) < n) {
    throw Error(ErrorKind::Degenerate, "degenerate: points are not full-dimensional");
  }

  const Vec c = pts.colwise().mean().transpose();
  const Mat centred = pts.rowwise() - c.transpose();
  const double radius = centred.rowwise().norm().maxCoeff();

  // Facets of the hull are the vertices of the polar {y : <p - c, y> <= 1}.
  const Mat polar = dd::enumerate_vertices(centred / radius, Vec::Ones(pts.rows()));

  const int f = static_cast<int>(polar.rows());
  Mat normals(f, n);
  Vec offsets(f);
  for (int i = 0; i < f; ++i) {
    const Vec y = polar.row(i).transpose() / radius;
    const double len = y.norm();
    normals.row(i) = (y / len).transpose();
    offsets(i) = (1.0 + y.dot(c)) / len;
  }

  const double tol = 1e-9 * radius;
  std::vector<std::vector<int>> on_facet(f);
  std::vector<std::vector<int>> facets_of(pts.rows());
  for (int i = 0; i < f; ++i) {
    for (int j = 0; j < pts.rows(); ++j) {
      if (std::abs(normals.row(i).dot(pts.row(j)) - offsets(i)) <= tol) {
        on_facet[i].push_back(j);
        facets_of[j].push_back(i);
      }
    }
  }

  // A point is a vertex iff the normals of the facets through it span R^n.
  std::vector<int> remap(pts.rows(), -1);
  std::vector<int> keep;
  for (int j = 0; j < pts.rows(); ++j) {
    if (static_cast<int>(facets_of[j].size()) < n) continue;
    Mat a(static_cast<int>(facets_of[j].size()), n);
    for (int r = 0; r < a.rows(); ++r) a.row(r) = normals.row(facets_of[j][r]);
    Eigen::ColPivHouseholderQR<Mat> qr(a);
    qr.setThreshold(1e-9);
    if (qr.rank() == n) {
      remap[j] = static_cast<int>(keep.size());
      keep.push_back(j);
    }
  }

  Hull hull;
  hull.vertices.resize(static_cast<int>(keep.size()), n);
  for (int i = 0; i < hull.vertices.rows(); ++i) hull.vertices.row(i) = pts.row(keep[i]);
  hull.normals = normals;
  hull.offsets = offsets;
  hull.incidence.resize(f);
  for (int i = 0; i < f; ++i) {
    for (int j : on_facet[i]) {
      if (remap[j] >= 0) hull.incidence[i].push_back(remap[j]);
    }
  }
  return hull;
}

namespace {

Mat gather(const Mat& vertices, const std::vector<int>& idx) {
  Mat out(static_cast<int>(idx.size()), vertices.cols());
  for (int i = 0; i < out.rows(); ++i) out.row(i) = vertices.row(idx[i]);
  return out;
}

}  // namespace

std::vector<Mat> triangulate_face(const Hull& hull, const std::vector<int>& face, int k) {
  const Mat pts = gather(hull.vertices, face);
  if (k == 0) return {pts.topRows(1)};
  if (k == 1) {
    // Collinear points: the segment between the two farthest apart.
    int a = 0, b = 0;
    double best = -1.0;
    for (int i = 0; i < pts.rows(); ++i) {
      for (int j = i + 1; j < pts.rows(); ++j) {
        const double dist = (pts.row(i) - pts.row(j)).norm();
        if (dist > best) {
          best = dist;
          a = i;
          b = j;
        }
      }
    }
    Mat seg(2, pts.cols());
    seg << pts.row(a), pts.row(b);
    return {seg};
  }

  std::set<std::vector<int>> subfaces;
  for (const auto& facet : hull.incidence) {
    std::vector<int> common;
    std::set_intersection(face.begin(), face.end(), facet.begin(), facet.end(),
                          std::back_inserter(common));
    if (common.size() < static_cast<size_t>(k) || common.size() == face.size()) continue;
    if (affine_dimension(gather(hull.vertices, common)) == k - 1) subfaces.insert(common);
  }

  const Eigen::RowVectorXd apex = pts.colwise().mean();
  std::vector<Mat> simplices;
  for (const auto& sub : subfaces) {
    for (const Mat& s : triangulate_face(hull, sub, k - 1)) {
      Mat cone(s.rows() + 1, s.cols());
      cone << s, apex;
      simplices.push_back(std::move(cone));
    }
  }
  return simplices;
}

double simplex_volume(const Mat& simplex) {
  const int k = static_cast<int>(simplex.rows()) - 1;
  if (k == 0) return 1.0;
  const Mat edges = simplex.bottomRows(k).rowwise() - simplex.row(0);
  const double gram = (edges * edges.transpose()).determinant();
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return std::sqrt(std::max(0.0, gram)) / factorial;
}

}  // namespace johnkit
