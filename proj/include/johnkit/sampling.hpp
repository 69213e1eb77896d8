#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "johnkit/types.hpp"

namespace johnkit {

struct McParams {
  std::int64_t sample_count = 100000;
  std::uint64_t seed = 1;
  std::int64_t batch = 16384;

  void validate() const;
};

/// value +- std_error from `samples` draws.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

using Rng = std::mt19937_64;

/// SplitMix64 finaliser; derives well-separated stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Engine for batch `index` of a run seeded with `seed`.
Rng batch_engine(std::uint64_t seed, std::uint64_t index);

/// Running mean and centred second moment (Welford, Chan merge).
struct Moments {
  double mean_ = 0.0;
  double m2 = 0.0;
  std::int64_t count = 0;

  void add(double x) {
    ++count;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count);
    m2 += delta * (x - mean_);
  }
  void merge(const Moments& other);
  double mean() const { return mean_; }
  double variance() const;
  /// mean +- sqrt(variance / count)
  Estimate estimate() const;
};

/// Splits mc.sample_count into batches, evaluates `draw(rng)` on every
/// sample of each batch with that batch's private engine, and merges the
/// batch moments in batch order. Batches run on worker threads; the result
/// does not depend on scheduling.
Moments run_batches(const McParams& mc, const std::function<double(Rng&)>& draw);

/// Multi-valued variant: draw fills `out` (length `width`) per sample.
std::vector<Moments> run_batches(const McParams& mc, int width,
                                 const std::function<void(Rng&, Eigen::Ref<Vec>)>& draw);

/// Uniform direction on S^{n-1} (normalised standard Gaussian).
Vec sample_sphere(int n, Rng& rng);
Vec sample_gaussian(int n, Rng& rng);
/// Uniform point in the cube [-r, r]^n.
Vec sample_box(int n, double r, Rng& rng);

/// Multivariate Student-t proposal, centred, isotropic scale `scale`.
struct StudentT {
  int dim = 1;
  double dof = 4.0;
  double scale = 1.0;

  Vec sample(Rng& rng) const;
  double log_density(const Vec& x) const;
};

}  // namespace johnkit
