#pragma once

#include "dbound/constrained_moments.hpp"
#include "dbound/estimator.hpp"
#include "dbound/gaussian.hpp"
#include "dbound/random.hpp"
#include "dbound/simulation/parallel.hpp"
#include "dbound/simulation/rmse.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dbound::sim {

/// Two planar dead-reckoning systems, x = [x1; x2] in R^4, propagated by
/// measured displacements with error covariance q.
///
/// Truth convention: each step both points take an independent
/// N(0, truth_step_sigma^2 I_2) displacement; if they end up farther apart
/// than gamma they are pulled symmetrically toward their midpoint onto
/// distance gamma. The true displacement is measured with noise N(0, q).
struct TrackingConfig {
  Matrix q = 1e-4 * Matrix::Identity(4, 4);
  Matrix p0 = 1e-4 * Matrix::Identity(4, 4);
  Vector initial_mean = Vector::Zero(4);
  std::size_t steps = 500;
  double gamma = 1.0;
  double alpha = kDefaultAlpha;
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
  /// Variance of the distance measurement assumed by the lower bound.
  double r_meas = 1e-4;
  double truth_step_sigma = 0.2;
};

void validate(const TrackingConfig& config);

/// Upper bound (no side information) and lower bound (distance measured
/// every step), both as sqrt of a trace, for k = 1..K.
struct PcrbTrace {
  std::vector<double> upper;
  std::vector<double> lower;
};

struct StepDiagnostics {
  bool active = false;
  bool degenerate = false;
  bool repaired = false;  // posterior covariance needed eigenvalue flooring
};

/// Prediction x += u_meas, P += q, then the constrained estimate re-used as a
/// Gaussian. An infinite bound skips the constraint step.
Gaussian dead_reckoning_step(const Gaussian& state, const Vector& u_meas, const Matrix& q,
                             const PreparedProblem& problem, StepDiagnostics* diag = nullptr);
Gaussian dead_reckoning_step(const Gaussian& state, const Vector& u_meas, const Matrix& q,
                             const DistanceBound& bound, double alpha = kDefaultAlpha);

/// sqrt(tr(p0 + k q)) for k = 1..steps.
std::vector<double> pcrb_upper(const Matrix& p0, const Matrix& q, std::size_t steps);

/// Information recursion for x(k) = x(k-1) + w, w ~ N(0, q), with scalar
/// measurement ||x1 - x2|| of variance r:
///   J(0) = p0^{-1}
///   J(k) = q^{-1} + E[H^T H](k) / r - q^{-1} (J(k-1) + q^{-1})^{-1} q^{-1}
/// measurement_info[k-1] holds E[H^T H] at step k. inverse_r = 0 disables the
/// measurement term. Returns sqrt(tr J(k)^{-1}) for k = 1..K.
std::vector<double> pcrb_lower(const Matrix& p0, const Matrix& q,
                               std::span<const Matrix> measurement_info, double inverse_r);

/// One simulated truth: states[k] for k = 0..K and the noisy displacement
/// measurements, measured[k-1] for step k.
struct TruthTrajectory {
  std::vector<Vector> states;
  std::vector<Vector> measured;
};

TruthTrajectory simulate_truth(const TrackingConfig& config, Rng& rng);

/// H = d||x1 - x2||/dx = [u^T, -u^T], u the unit separation. Empty when the
/// separation is exactly zero.
std::optional<Vector> distance_gradient(const Vector& x);

/// Monte Carlo E[H^T H] per step over the given trajectories; samples with
/// an undefined gradient are skipped.
std::vector<Matrix> measurement_information(std::span<const TruthTrajectory> trajectories);

struct TrackingResult {
  RmseCurve curve;  // abscissa = k; rmse_prior is plain dead reckoning
  PcrbTrace pcrb;
  std::size_t psd_repairs = 0;
  std::size_t degenerate_steps = 0;
};

/// Runs are processed in fixed blocks; within a block they may execute in
/// parallel and are reduced in run order, so output is independent of the
/// thread count. The lower bound uses the same truth trajectories.
inline constexpr std::size_t kTrackingBlock = 256;

TrackingResult run_tracking(const TrackingConfig& config, const RunOptions& options = {});

}  // namespace dbound::sim
