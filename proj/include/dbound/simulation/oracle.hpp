#pragma once

#include "dbound/distance_transform.hpp"
#include "dbound/gaussian.hpp"
#include "dbound/random.hpp"
#include "dbound/simulation/parallel.hpp"

#include <cstdint>

namespace dbound::sim {

/// Brute-force conditional moments of N(prior) restricted to
/// ||x1 - x2|| <= gamma, with Monte Carlo standard errors.
struct OracleMoments {
  Vector mean;
  Matrix cov;
  Vector mean_stderr;
  Matrix cov_stderr;  // elementwise standard error of the sample covariance
  std::size_t accepted = 0;
  std::size_t drawn = 0;

  double acceptance_rate() const {
    return drawn ? static_cast<double>(accepted) / static_cast<double>(drawn) : 0.0;
  }
};

/// Work is cut into a fixed number of chunks (independent of thread count),
/// each with its own derived stream; two passes over identical draws give
/// the mean and then the centered second and fourth moments.
inline constexpr std::size_t kOracleChunks = 64;
inline constexpr std::size_t kOracleMinSamples = 10'000;
inline constexpr std::size_t kOracleMinAccepted = 100;

OracleMoments oracle_conditional_moments(const Gaussian& prior, const StatePartition& partition,
                                         double gamma, std::size_t samples, std::uint64_t seed,
                                         const RunOptions& options = {});

inline constexpr std::size_t kDefaultMaxAttempts = 1'000'000;

struct TruthPair {
  Vector x1;
  Vector x2;
  std::size_t attempts = 0;
};

/// Draws (x1, x2) from two independent Gaussians until ||x1 - x2|| <= gamma.
/// Throws AcceptanceFailure after max_attempts draws.
TruthPair rejection_sample_truth(const GaussianSampler& prior1, const GaussianSampler& prior2,
                                 double gamma, Rng& rng,
                                 std::size_t max_attempts = kDefaultMaxAttempts);
TruthPair rejection_sample_truth(const Gaussian& prior1, const Gaussian& prior2, double gamma,
                                 Rng& rng, std::size_t max_attempts = kDefaultMaxAttempts);

}  // namespace dbound::sim
