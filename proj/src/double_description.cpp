#include "johnkit/double_description.hpp"

#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace johnkit::dd {
namespace {

using ZeroSet = boost::dynamic_bitset<>;

struct Ray {
  Vec z;
  ZeroSet zeros;
};

std::vector<int> independent_rows(const Mat& a, int wanted, double tol) {
  std::vector<int> chosen;
  Mat basis(0, a.cols());
  for (int i = 0; i < a.rows() && static_cast<int>(chosen.size()) < wanted; ++i) {
    Mat trial(basis.rows() + 1, a.cols());
    trial << basis, a.row(i);
    Eigen::ColPivHouseholderQR<Mat> qr(trial);
    qr.setThreshold(tol);
    if (qr.rank() == trial.rows()) {
      basis = trial;
      chosen.push_back(i);
    }
  }
  return chosen;
}

}  // namespace

Mat enumerate_vertices(const Mat& g, const Vec& h, double tol) {
  const int m = static_cast<int>(g.rows());
  const int n = static_cast<int>(g.cols());
  if (h.size() != m) throw Error(ErrorKind::InvalidInput, "offset count mismatch");
  if ((h.array() <= 0.0).any()) {
    throw Error(ErrorKind::InvalidInput, "origin must be interior (offsets > 0)");
  }

  const int d = n + 1;
  Mat a(m + 1, d);
  a.topLeftCorner(m, n) = g;
  a.col(n).head(m) = -h;
  a.row(m).setZero();
  a(m, n) = -1.0;
  for (int i = 0; i < a.rows(); ++i) a.row(i).normalize();

  {
    Eigen::ColPivHouseholderQR<Mat> qr(g);
    qr.setThreshold(1e-12);
    if (qr.rank() < n) throw Error(ErrorKind::Unbounded, "unbounded: normals do not span");
  }

  // Seed with the t >= 0 row first so the initial cone is pointed upward.
  std::vector<int> order;
  order.push_back(m);
  for (int i = 0; i < m; ++i) order.push_back(i);
  Mat reordered(a.rows(), d);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) reordered.row(i) = a.row(order[i]);

  const std::vector<int> seed = independent_rows(reordered, d, 1e-9);
  if (static_cast<int>(seed.size()) < d) {
    throw Error(ErrorKind::Unbounded, "unbounded: constraint matrix is rank deficient");
  }
  std::vector<int> seed_rows;
  for (int s : seed) seed_rows.push_back(order[s]);

  Mat as(d, d);
  for (int i = 0; i < d; ++i) as.row(i) = a.row(seed_rows[i]);
  const Mat init = -as.inverse();

  const int total = m + 1;
  std::vector<bool> processed(total, false);
  for (int r : seed_rows) processed[r] = true;

  std::vector<Ray> rays;
  for (int j = 0; j < d; ++j) {
    Ray ray{init.col(j).normalized(), ZeroSet(total)};
    for (int i = 0; i < d; ++i) {
      if (i != j) ray.zeros.set(seed_rows[i]);
    }
    rays.push_back(std::move(ray));
  }

  for (int k = 0; k < total; ++k) {
    if (processed[k]) continue;
    processed[k] = true;
    const Vec row = a.row(k).transpose();

    std::vector<double> value(rays.size());
    std::vector<int> pos, neg;
    for (size_t r = 0; r < rays.size(); ++r) {
      value[r] = row.dot(rays[r].z);
      if (value[r] > tol) {
        pos.push_back(static_cast<int>(r));
      } else if (value[r] < -tol) {
        neg.push_back(static_cast<int>(r));
      } else {
        rays[r].zeros.set(k);
      }
    }
    if (pos.empty()) continue;

    std::vector<Ray> next;
    next.reserve(rays.size());
    for (int p : pos) {
      for (int q : neg) {
        ZeroSet common = rays[p].zeros & rays[q].zeros;
        if (static_cast<int>(common.count()) < d - 2) continue;
        bool adjacent = true;
        for (size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (static_cast<int>(r) == p || static_cast<int>(r) == q) continue;
          if (common.is_subset_of(rays[r].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec z = value[p] * rays[q].z - value[q] * rays[p].z;
        z.normalize();
        common.set(k);
        next.push_back({std::move(z), std::move(common)});
      }
    }
    for (size_t r = 0; r < rays.size(); ++r) {
      if (value[r] <= tol) next.push_back(std::move(rays[r]));
    }
    rays = std::move(next);
  }

  std::vector<Vec> vertices;
  for (const Ray& ray : rays) {
    const double t = ray.z(n);
    if (t <= 1e-12) throw Error(ErrorKind::Unbounded, "unbounded: recession direction found");
    Vec y = ray.z.head(n) / t;
    bool duplicate = false;
    for (const Vec& v : vertices) {
      if ((v - y).norm() <= 1e-9 * (1.0 + y.norm())) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) vertices.push_back(std::move(y));
  }

  Mat out(static_cast<int>(vertices.size()), n);
  for (int i = 0; i < out.rows(); ++i) out.row(i) = vertices[i].transpose();
  return out;
}

}  // namespace johnkit::dd
