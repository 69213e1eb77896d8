#include "johnkit/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

namespace johnkit {

void McParams::validate() const {
  if (sample_count < 1) throw Error(ErrorKind::InvalidInput, "sample_count must be positive");
  if (batch < 1) throw Error(ErrorKind::InvalidInput, "batch must be positive");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Rng batch_engine(std::uint64_t seed, std::uint64_t index) {
  return Rng(mix_seed(seed, index));
}

void Moments::merge(const Moments& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double total = static_cast<double>(count + other.count);
  const double delta = other.mean_ - mean_;
  mean_ += delta * static_cast<double>(other.count) / total;
  m2 += other.m2 + delta * delta * static_cast<double>(count) *
                       static_cast<double>(other.count) / total;
  count += other.count;
}

double Moments::variance() const {
  return count < 2 ? 0.0 : m2 / static_cast<double>(count - 1);
}

Estimate Moments::estimate() const {
  return {mean(), count ? std::sqrt(variance() / count) : 0.0, count};
}

namespace {

template <typename Body>
void for_each_batch(std::int64_t batches, Body&& body) {
  const auto workers = static_cast<std::int64_t>(
      std::clamp<unsigned>(std::thread::hardware_concurrency(), 1u, 16u));
  if (workers == 1 || batches == 1) {
    for (std::int64_t b = 0; b < batches; ++b) body(b);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::jthread> pool;
  for (std::int64_t w = 0; w < std::min(workers, batches); ++w) {
    pool.emplace_back([&] {
      for (std::int64_t b = next++; b < batches; b = next++) body(b);
    });
  }
}

}  // namespace

Moments run_batches(const McParams& mc, const std::function<double(Rng&)>& draw) {
  return run_batches(mc, 1, [&](Rng& rng, Eigen::Ref<Vec> out) { out(0) = draw(rng); })[0];
}

std::vector<Moments> run_batches(const McParams& mc, int width,
                                 const std::function<void(Rng&, Eigen::Ref<Vec>)>& draw) {
  mc.validate();
  const std::int64_t batches = (mc.sample_count + mc.batch - 1) / mc.batch;
  std::vector<std::vector<Moments>> partial(batches, std::vector<Moments>(width));
  for_each_batch(batches, [&](std::int64_t b) {
    Rng rng = batch_engine(mc.seed, static_cast<std::uint64_t>(b));
    const std::int64_t begin = b * mc.batch;
    const std::int64_t end = std::min(mc.sample_count, begin + mc.batch);
    Vec out(width);
    for (std::int64_t s = begin; s < end; ++s) {
      draw(rng, out);
      for (int k = 0; k < width; ++k) partial[b][k].add(out(k));
    }
  });
  std::vector<Moments> total(width);
  for (const auto& part : partial) {
    for (int k = 0; k < width; ++k) total[k].merge(part[k]);
  }
  return total;
}

Vec sample_gaussian(int n, Rng& rng) {
  std::normal_distribution<double> normal;
  Vec g(n);
  for (int i = 0; i < n; ++i) g(i) = normal(rng);
  return g;
}

Vec sample_sphere(int n, Rng& rng) {
  for (;;) {
    Vec g = sample_gaussian(n, rng);
    const double len = g.norm();
    if (len > 1e-300) return g / len;
  }
}

Vec sample_box(int n, double r, Rng& rng) {
  std::uniform_real_distribution<double> uniform(-r, r);
  Vec x(n);
  for (int i = 0; i < n; ++i) x(i) = uniform(rng);
  return x;
}

Vec StudentT::sample(Rng& rng) const {
  std::chi_squared_distribution<double> chi2(dof);
  const Vec z = sample_gaussian(dim, rng);
  const double w = chi2(rng);
  return scale * z / std::sqrt(w / dof);
}

double StudentT::log_density(const Vec& x) const {
  const double d = dim;
  const double q = x.squaredNorm() / (scale * scale * dof);
  return boost::math::lgamma(0.5 * (dof + d)) - boost::math::lgamma(0.5 * dof) -
         0.5 * d * std::log(dof * std::numbers::pi) - d * std::log(scale) -
         0.5 * (dof + d) * std::log1p(q);
}

}  // namespace johnkit
