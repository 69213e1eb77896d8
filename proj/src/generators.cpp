#include "johnkit/generators.hpp"

#include <cmath>
#include <random>

namespace johnkit {

HPolytope random_polytope(int n, Rng& rng, bool symmetric, int max_attempts) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dimension must be >= 1");
  std::uniform_int_distribution<int> count(3 * n, 6 * n);
  std::uniform_real_distribution<double> radius(1.0, 2.0);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const int m = count(rng);
    const int rows = symmetric ? 2 * m : m;
    Mat a(rows, n);
    Vec b(rows);
    for (int i = 0; i < m; ++i) {
      a.row(i) = sample_sphere(n, rng).transpose();
      b(i) = radius(rng);
      if (symmetric) {
        a.row(m + i) = -a.row(i);
        b(m + i) = b(i);
      }
    }
    HPolytope p(a, b);
    if (p.is_bounded()) return p;
  }
  throw Error(ErrorKind::Degenerate, "random polytope generator kept drawing unbounded sets");
}

HPolytope random_polytope(int n, std::uint64_t seed, std::uint64_t index, bool symmetric) {
  Rng rng = batch_engine(seed, index);
  return random_polytope(n, rng, symmetric);
}

AffineMap random_affine(int n, Rng& rng) {
  std::uniform_real_distribution<double> log_scale(std::log(0.5), std::log(2.0));
  const Mat g = Eigen::Map<const Mat>(sample_gaussian(n * n, rng).data(), n, n);
  const Mat h = Eigen::Map<const Mat>(sample_gaussian(n * n, rng).data(), n, n);
  const Mat u = Eigen::HouseholderQR<Mat>(g).householderQ();
  const Mat v = Eigen::HouseholderQR<Mat>(h).householderQ();
  Vec s(n);
  for (int i = 0; i < n; ++i) s(i) = std::exp(log_scale(rng));
  const double shift = 0.2 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return {u * s.asDiagonal() * v.transpose(), shift * sample_sphere(n, rng)};
}

}  // namespace johnkit
