#pragma once

#include "dbound/gaussian.hpp"

#include <cstdint>
#include <random>

namespace dbound {

/// Seedable random source. Each instance belongs to one thread at a time;
/// parallel code derives one Rng per work item with derive_seed().
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double standard_normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  Vector standard_normal_vector(Eigen::Index size);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// splitmix64 mix of (seed, stream); used to give every Monte Carlo run an
/// independent, schedule-free stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Draw from N(mean, cov) as mean + G w. Factorizes on every call.
Vector sample_gaussian(const Gaussian& g, Rng& rng);

/// Caches the Cholesky factor for repeated draws from one Gaussian.
class GaussianSampler {
 public:
  explicit GaussianSampler(const Gaussian& g);

  Vector operator()(Rng& rng) const;
  /// Allocation-free draw into out; noise is scratch space of size dim().
  void draw(Rng& rng, Vector& noise, Vector& out) const;
  Eigen::Index dim() const { return mean_.size(); }

 private:
  Vector mean_;
  Matrix factor_;
};

}  // namespace dbound
