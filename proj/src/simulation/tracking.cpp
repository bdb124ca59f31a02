#include "dbound/simulation/tracking.hpp"

#include "dbound/error.hpp"

#include <cmath>
#include <string>

namespace dbound::sim {

void validate(const TrackingConfig& config) {
  if (config.q.rows() != 4 || config.p0.rows() != 4 || config.initial_mean.size() != 4) {
    throw Error(ErrorCode::dimension_mismatch, "tracking: q, p0 and initial_mean must be 4-dimensional");
  }
  validate(Gaussian{config.initial_mean, config.q});
  validate(Gaussian{config.initial_mean, config.p0});
  if (config.steps < 1) throw Error(ErrorCode::invalid_argument, "tracking: steps must be >= 1");
  if (config.runs < 1) throw Error(ErrorCode::invalid_argument, "tracking: runs must be >= 1");
  if (!(config.r_meas > 0.0)) throw Error(ErrorCode::invalid_argument, "tracking: r_meas must be > 0");
  if (!(config.truth_step_sigma >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "tracking: truth_step_sigma must be >= 0");
  }
}

Gaussian dead_reckoning_step(const Gaussian& state, const Vector& u_meas, const Matrix& q,
                             const PreparedProblem& problem, StepDiagnostics* diag) {
  if (diag) *diag = {};
  if (u_meas.size() != state.dim() || q.rows() != state.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "dead_reckoning_step: sizes do not conform");
  }
  Gaussian predicted{state.mean + u_meas, symmetrized(state.cov + q)};
  if (std::isinf(problem.bound().gamma())) return predicted;
  ConstrainedEstimate est = problem.estimate(predicted);
  bool repaired = false;
  Matrix cov = floor_negative_eigenvalues(est.c_hat, &repaired);
  if (diag) *diag = {est.active, est.degenerate, repaired};
  return {std::move(est.x_hat), std::move(cov)};
}

Gaussian dead_reckoning_step(const Gaussian& state, const Vector& u_meas, const Matrix& q,
                             const DistanceBound& bound, double alpha) {
  const int n = static_cast<int>(state.dim() / 2);
  const PreparedProblem problem(StatePartition(n, static_cast<int>(state.dim()) - 2 * n), bound,
                                alpha);
  return dead_reckoning_step(state, u_meas, q, problem);
}

std::vector<double> pcrb_upper(const Matrix& p0, const Matrix& q, std::size_t steps) {
  std::vector<double> out;
  out.reserve(steps);
  const double base = p0.trace();
  const double rate = q.trace();
  for (std::size_t k = 1; k <= steps; ++k) out.push_back(std::sqrt(base + static_cast<double>(k) * rate));
  return out;
}

namespace {

Matrix spd_inverse(const Matrix& m, const char* what) {
  auto g = try_cholesky_lower(symmetrized(m));
  if (!g) {
    throw Error(ErrorCode::not_positive_definite,
                std::string("pcrb_lower: ") + what + " lost positive definiteness");
  }
  return symmetrized(cholesky_solve(*g, Matrix::Identity(m.rows(), m.cols())));
}

}  // namespace

std::vector<double> pcrb_lower(const Matrix& p0, const Matrix& q,
                               std::span<const Matrix> measurement_info, double inverse_r) {
  const Matrix q_inv = spd_inverse(q, "q");
  Matrix info = spd_inverse(p0, "p0");
  std::vector<double> out;
  out.reserve(measurement_info.size());
  for (std::size_t k = 0; k < measurement_info.size(); ++k) {
    const Matrix carried = q_inv * spd_inverse(info + q_inv, "J(k-1) + q^-1") * q_inv;
    info = symmetrized(q_inv + inverse_r * measurement_info[k] - carried);
    out.push_back(std::sqrt(spd_inverse(info, "J(k)").trace()));
  }
  return out;
}

namespace {

// Enforces ||x1 - x2|| <= gamma by moving both points along their separation,
// keeping the midpoint.
void pull_together(Vector& x, double gamma) {
  const Vector sep = x.head(2) - x.tail(2);
  const double dist = sep.norm();
  if (dist <= gamma) return;
  const Vector mid = 0.5 * (x.head(2) + x.tail(2));
  const Vector half = (0.5 * gamma / dist) * sep;
  x.head(2) = mid + half;
  x.tail(2) = mid - half;
}

}  // namespace

TruthTrajectory simulate_truth(const TrackingConfig& config, Rng& rng) {
  const GaussianSampler initial({config.initial_mean, config.p0});
  const GaussianSampler noise({Vector::Zero(4), config.q});
  TruthTrajectory out;
  out.states.reserve(config.steps + 1);
  out.measured.reserve(config.steps);
  Vector x = initial(rng);
  pull_together(x, config.gamma);
  out.states.push_back(x);
  for (std::size_t k = 1; k <= config.steps; ++k) {
    Vector next = x + config.truth_step_sigma * rng.standard_normal_vector(4);
    pull_together(next, config.gamma);
    out.measured.push_back((next - x) + noise(rng));
    x = std::move(next);
    out.states.push_back(x);
  }
  return out;
}

std::optional<Vector> distance_gradient(const Vector& x) {
  const Vector sep = x.head(2) - x.tail(2);
  const double dist = sep.norm();
  if (dist == 0.0) return std::nullopt;
  Vector h(4);
  h << sep / dist, -sep / dist;
  return h;
}

std::vector<Matrix> measurement_information(std::span<const TruthTrajectory> trajectories) {
  if (trajectories.empty()) return {};
  const std::size_t steps = trajectories.front().measured.size();
  std::vector<Matrix> info(steps, Matrix::Zero(4, 4));
  std::vector<std::size_t> counts(steps, 0);
  for (const auto& t : trajectories) {
    for (std::size_t k = 1; k <= steps; ++k) {
      if (auto h = distance_gradient(t.states[k])) {
        info[k - 1] += *h * h->transpose();
        ++counts[k - 1];
      }
    }
  }
  for (std::size_t k = 0; k < steps; ++k) {
    if (counts[k]) info[k] /= static_cast<double>(counts[k]);
  }
  return info;
}

namespace {

struct RunTrace {
  std::vector<double> estimator_sq;
  std::vector<double> dead_reckoning_sq;
  std::vector<double> predicted;
  std::vector<Eigen::Matrix4d> gradient_outer;  // H^T H, zero when undefined
  std::vector<char> gradient_valid;
  std::size_t repairs = 0;
  std::size_t degenerate = 0;
};

RunTrace run_single(const TrackingConfig& config, const PreparedProblem& problem,
                    std::uint64_t seed) {
  Rng rng(seed);
  const TruthTrajectory truth = simulate_truth(config, rng);
  RunTrace trace;
  const std::size_t steps = config.steps;
  trace.estimator_sq.reserve(steps);
  trace.dead_reckoning_sq.reserve(steps);
  trace.predicted.reserve(steps);
  trace.gradient_outer.reserve(steps);
  trace.gradient_valid.reserve(steps);

  Gaussian state{config.initial_mean, config.p0};
  Vector dead_reckoning = config.initial_mean;
  for (std::size_t k = 1; k <= steps; ++k) {
    const Vector& u = truth.measured[k - 1];
    StepDiagnostics diag;
    state = dead_reckoning_step(state, u, config.q, problem, &diag);
    if (diag.repaired) ++trace.repairs;
    if (diag.degenerate) ++trace.degenerate;
    dead_reckoning += u;
    const Vector& x = truth.states[k];
    trace.estimator_sq.push_back((state.mean - x).squaredNorm());
    trace.dead_reckoning_sq.push_back((dead_reckoning - x).squaredNorm());
    trace.predicted.push_back(std::sqrt(std::max(0.0, state.cov.trace())));
    if (auto h = distance_gradient(x)) {
      trace.gradient_outer.push_back(*h * h->transpose());
      trace.gradient_valid.push_back(1);
    } else {
      trace.gradient_outer.push_back(Eigen::Matrix4d::Zero());
      trace.gradient_valid.push_back(0);
    }
  }
  return trace;
}

}  // namespace

TrackingResult run_tracking(const TrackingConfig& config, const RunOptions& options) {
  validate(config);
  const PreparedProblem problem(StatePartition(2, 0),
                                DistanceBound(config.gamma), config.alpha);
  const std::size_t steps = config.steps;

  std::vector<RmseAccumulator> est(steps);
  std::vector<RmseAccumulator> dr(steps);
  std::vector<double> predicted(steps, 0.0);
  std::vector<Matrix> info(steps, Matrix::Zero(4, 4));
  std::vector<std::size_t> info_count(steps, 0);
  TrackingResult result;

  std::vector<RunTrace> block;
  for (std::size_t start = 0; start < config.runs; start += kTrackingBlock) {
    const std::size_t count = std::min(kTrackingBlock, config.runs - start);
    block.assign(count, RunTrace{});
    for_each_index(count, options, [&](std::size_t i) {
      block[i] = run_single(config, problem, derive_seed(config.seed, start + i));
    });
    for (const auto& t : block) {
      for (std::size_t k = 0; k < steps; ++k) {
        est[k].add(t.estimator_sq[k]);
        dr[k].add(t.dead_reckoning_sq[k]);
        predicted[k] += t.predicted[k];
        if (t.gradient_valid[k]) {
          info[k] += t.gradient_outer[k];
          ++info_count[k];
        }
      }
      result.psd_repairs += t.repairs;
      result.degenerate_steps += t.degenerate;
    }
  }

  auto& c = result.curve;
  for (std::size_t k = 0; k < steps; ++k) {
    c.abscissa.push_back(static_cast<double>(k + 1));
    c.rmse_estimator.push_back(est[k].rmse());
    c.stderr_estimator.push_back(est[k].stderr_rmse());
    c.rmse_prior.push_back(dr[k].rmse());
    c.stderr_prior.push_back(dr[k].stderr_rmse());
    c.predicted_rmse.push_back(predicted[k] / static_cast<double>(config.runs));
    if (info_count[k]) info[k] /= static_cast<double>(info_count[k]);
  }
  result.pcrb.upper = pcrb_upper(config.p0, config.q, steps);
  result.pcrb.lower = pcrb_lower(config.p0, config.q, info, 1.0 / config.r_meas);
  return result;
}

}  // namespace dbound::sim
