#pragma once

#include "dbound/constrained_moments.hpp"
#include "dbound/gaussian.hpp"
#include "dbound/simulation/oracle.hpp"
#include "dbound/simulation/parallel.hpp"
#include "dbound/simulation/rmse.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace dbound::sim {

/// Two objects in the plane: x1 ~ N(beta 1_2, sigma1^2 I_2), x2 ~ N(0, I_2).
struct PositioningConfig {
  double beta = 1.0;
  double sigma1 = 1.0;
  double gamma = 1.0;
  double alpha = kDefaultAlpha;
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
  std::size_t max_attempts = kDefaultMaxAttempts;
};

enum class SweepAxis { sigma1, beta };

SweepAxis parse_sweep_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

/// Prior over x = [x1; x2] for one sweep point.
Gaussian positioning_prior(const PositioningConfig& config);

struct PositioningResult {
  RmseCurve curve;
  std::vector<double> acceptance_rate;  // accepted / drawn truth candidates per sweep point
};

/// For every sweep value: draw `runs` constrained truths by rejection and
/// score the prior mean and the constrained estimate against them.
/// Run r of sweep point j uses stream derive_seed(derive_seed(seed, j), r).
PositioningResult run_positioning(const PositioningConfig& config, SweepAxis axis,
                                  std::span<const double> values, const RunOptions& options = {});

}  // namespace dbound::sim
