#include "dbound/simulation/oracle.hpp"

#include "dbound/error.hpp"

#include <string>

namespace dbound::sim {
namespace {

// Raw sums of y = x - shift over accepted draws, up to fourth order per pair.
struct ChunkSums {
  std::size_t accepted = 0;
  Vector s1;  // sum y_i
  Vector s2;  // sum y_i^2
  Matrix s11;  // sum y_i y_j
  Matrix s21;  // sum y_i^2 y_j
  Matrix s22;  // sum y_i^2 y_j^2
};

std::size_t chunk_size(std::size_t samples, std::size_t chunk) {
  const std::size_t base = samples / kOracleChunks;
  return base + (chunk < samples % kOracleChunks ? 1 : 0);
}

ChunkSums run_chunk(const GaussianSampler& sampler, const Vector& shift, int n, double gamma,
                    std::size_t samples, std::uint64_t seed, std::size_t chunk) {
  const Eigen::Index d = sampler.dim();
  ChunkSums s{0, Vector::Zero(d), Vector::Zero(d), Matrix::Zero(d, d), Matrix::Zero(d, d),
              Matrix::Zero(d, d)};
  Rng rng(derive_seed(seed, chunk));
  Vector noise(d);
  Vector x(d);
  Vector y(d);
  Vector sq(d);
  const std::size_t count = chunk_size(samples, chunk);
  for (std::size_t i = 0; i < count; ++i) {
    sampler.draw(rng, noise, x);
    if ((x.head(n) - x.segment(n, n)).norm() > gamma) continue;
    ++s.accepted;
    y = x - shift;
    sq = y.cwiseAbs2();
    s.s1 += y;
    s.s2 += sq;
    s.s11.noalias() += y * y.transpose();
    s.s21.noalias() += sq * y.transpose();
    s.s22.noalias() += sq * sq.transpose();
  }
  return s;
}

}  // namespace

OracleMoments oracle_conditional_moments(const Gaussian& prior, const StatePartition& partition,
                                         double gamma, std::size_t samples, std::uint64_t seed,
                                         const RunOptions& options) {
  if (samples < kOracleMinSamples) {
    throw Error(ErrorCode::invalid_argument, "oracle_conditional_moments: need at least " +
                                                 std::to_string(kOracleMinSamples) + " samples");
  }
  if (prior.dim() != partition.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "oracle_conditional_moments: prior/partition mismatch");
  }
  const Eigen::Index d = prior.dim();
  const GaussianSampler sampler(prior);
  const int n = partition.n();

  std::vector<ChunkSums> sums(kOracleChunks);
  for_each_index(kOracleChunks, options, [&](std::size_t c) {
    sums[c] = run_chunk(sampler, prior.mean, n, gamma, samples, seed, c);
  });

  ChunkSums t{0, Vector::Zero(d), Vector::Zero(d), Matrix::Zero(d, d), Matrix::Zero(d, d),
              Matrix::Zero(d, d)};
  for (const auto& s : sums) {
    t.accepted += s.accepted;
    t.s1 += s.s1;
    t.s2 += s.s2;
    t.s11 += s.s11;
    t.s21 += s.s21;
    t.s22 += s.s22;
  }

  OracleMoments out;
  out.drawn = samples;
  out.accepted = t.accepted;
  if (out.accepted < kOracleMinAccepted) {
    throw Error(ErrorCode::acceptance_failure,
                "oracle_conditional_moments: only " + std::to_string(out.accepted) + " of " +
                    std::to_string(samples) + " samples satisfy the bound");
  }
  const double count = static_cast<double>(out.accepted);
  const Vector a = t.s1 / count;  // mean - shift
  out.mean = prior.mean + a;

  // Central sums: sum e_i e_j and sum (e_i e_j)^2 with e = y - a.
  const Matrix second = t.s11 - count * a * a.transpose();
  Matrix fourth(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double ai = a[i];
      const double aj = a[j];
      fourth(i, j) = t.s22(i, j) - 2.0 * aj * t.s21(i, j) - 2.0 * ai * t.s21(j, i) +
                     aj * aj * t.s2[i] + ai * ai * t.s2[j] + 4.0 * ai * aj * t.s11(i, j) -
                     2.0 * ai * aj * aj * t.s1[i] - 2.0 * ai * ai * aj * t.s1[j] +
                     ai * ai * aj * aj * count;
    }
  }
  out.cov = symmetrized(second / (count - 1.0));
  out.mean_stderr = (out.cov.diagonal() / count).cwiseSqrt();
  const Matrix biased = second / count;
  const Matrix spread = (fourth / count - biased.cwiseProduct(biased)).cwiseMax(0.0);
  out.cov_stderr = (spread / count).cwiseSqrt();
  return out;
}

TruthPair rejection_sample_truth(const GaussianSampler& prior1, const GaussianSampler& prior2,
                                 double gamma, Rng& rng, std::size_t max_attempts) {
  if (max_attempts < 1) {
    throw Error(ErrorCode::invalid_argument, "rejection_sample_truth: max_attempts must be >= 1");
  }
  if (prior1.dim() != prior2.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "rejection_sample_truth: subvector sizes differ");
  }
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    Vector x1 = prior1(rng);
    Vector x2 = prior2(rng);
    if ((x1 - x2).norm() <= gamma) return {std::move(x1), std::move(x2), attempt};
  }
  throw Error(ErrorCode::acceptance_failure,
              "rejection_sample_truth: no pair within gamma = " + std::to_string(gamma) +
                  " after " + std::to_string(max_attempts) + " attempts");
}

TruthPair rejection_sample_truth(const Gaussian& prior1, const Gaussian& prior2, double gamma,
                                 Rng& rng, std::size_t max_attempts) {
  return rejection_sample_truth(GaussianSampler(prior1), GaussianSampler(prior2), gamma, rng,
                                max_attempts);
}

}  // namespace dbound::sim
