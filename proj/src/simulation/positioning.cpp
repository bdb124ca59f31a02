#include "dbound/simulation/positioning.hpp"

#include "dbound/error.hpp"
#include "dbound/estimator.hpp"

#include <string>

namespace dbound::sim {

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "sigma1") return SweepAxis::sigma1;
  if (name == "beta") return SweepAxis::beta;
  throw Error(ErrorCode::config_error,
              "sweep axis must be 'sigma1' or 'beta', got '" + std::string(name) + "'");
}

std::string_view to_string(SweepAxis axis) {
  return axis == SweepAxis::sigma1 ? "sigma1" : "beta";
}

Gaussian positioning_prior(const PositioningConfig& config) {
  if (!(config.sigma1 > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "positioning: sigma1 must be positive");
  }
  Gaussian prior;
  prior.mean = Vector::Zero(4);
  prior.mean.head(2).setConstant(config.beta);
  prior.cov = direct_sum(config.sigma1 * config.sigma1 * Matrix::Identity(2, 2),
                         Matrix::Identity(2, 2));
  return prior;
}

namespace {

struct RunSample {
  double prior_sq = 0.0;
  double estimator_sq = 0.0;
  std::size_t attempts = 0;
};

}  // namespace

PositioningResult run_positioning(const PositioningConfig& config, SweepAxis axis,
                                  std::span<const double> values, const RunOptions& options) {
  if (config.runs < 1) throw Error(ErrorCode::invalid_argument, "positioning: runs must be >= 1");
  const StatePartition partition(2, 0);
  const PreparedProblem problem(partition, DistanceBound(config.gamma), config.alpha);

  PositioningResult result;
  std::vector<RunSample> samples(config.runs);
  for (std::size_t j = 0; j < values.size(); ++j) {
    PositioningConfig point = config;
    (axis == SweepAxis::sigma1 ? point.sigma1 : point.beta) = values[j];
    const Gaussian prior = positioning_prior(point);
    const ConstrainedEstimate est = problem.estimate(prior);
    const GaussianSampler sampler1({prior.mean.head(2), prior.cov.topLeftCorner(2, 2)});
    const GaussianSampler sampler2({prior.mean.tail(2), prior.cov.bottomRightCorner(2, 2)});
    const std::uint64_t point_seed = derive_seed(config.seed, j);

    for_each_index(config.runs, options, [&](std::size_t r) {
      Rng rng(derive_seed(point_seed, r));
      const TruthPair truth =
          rejection_sample_truth(sampler1, sampler2, config.gamma, rng, config.max_attempts);
      Vector x(4);
      x << truth.x1, truth.x2;
      samples[r] = {(prior.mean - x).squaredNorm(), (est.x_hat - x).squaredNorm(), truth.attempts};
    });

    RmseAccumulator prior_acc;
    RmseAccumulator est_acc;
    std::size_t attempts = 0;
    for (const auto& s : samples) {
      prior_acc.add(s.prior_sq);
      est_acc.add(s.estimator_sq);
      attempts += s.attempts;
    }
    auto& c = result.curve;
    c.abscissa.push_back(values[j]);
    c.rmse_prior.push_back(prior_acc.rmse());
    c.rmse_estimator.push_back(est_acc.rmse());
    c.predicted_rmse.push_back(std::sqrt(est.c_hat.trace()));
    c.stderr_estimator.push_back(est_acc.stderr_rmse());
    c.stderr_prior.push_back(prior_acc.stderr_rmse());
    result.acceptance_rate.push_back(static_cast<double>(config.runs) / static_cast<double>(attempts));
  }
  return result;
}

}  // namespace dbound::sim
