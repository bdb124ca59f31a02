#pragma once

#include "dbound/cli/config.hpp"
#include "dbound/cli/csv.hpp"
#include "dbound/error.hpp"
#include "dbound/gaussian.hpp"
#include "dbound/simulation/parallel.hpp"
#include "dbound/simulation/positioning.hpp"
#include "dbound/simulation/tracking.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dbound::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class Preset { desk, paper };

Preset parse_preset(const std::string& name);
std::size_t preset_runs(Preset preset);

/// Command-line level options shared by every scenario. Flags take
/// precedence over the config file, which takes precedence over defaults.
struct CommandOptions {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
  std::optional<Preset> preset;
  sim::RunOptions run;
};

/// Every section and key the config format accepts.
const std::map<std::string, std::set<std::string>>& config_schema();

struct IllustrateSettings {
  Vector mean_x1 = Vector::Zero(2);
  Vector mean_x2 = Vector::Constant(2, 0.8);
  Matrix cov_x1 = (Matrix(2, 2) << 0.1, 0.05, 0.05, 0.1).finished();
  Matrix cov_x2 = 0.2 * Matrix::Identity(2, 2);
  double gamma = 1.0;
  double alpha = kDefaultAlpha;
  int ellipse_points = 64;
  double ellipse_level = 0.95;
};

struct PositioningSettings {
  sim::PositioningConfig config;
  sim::SweepAxis axis = sim::SweepAxis::sigma1;
  std::vector<double> values;
};

IllustrateSettings resolve_illustrate(const CommandOptions& options);
PositioningSettings resolve_positioning(const CommandOptions& options);
sim::TrackingConfig resolve_tracking(const CommandOptions& options);

/// Points on the level-`level` confidence ellipse of a 2-D Gaussian.
std::vector<Vector> confidence_ellipse(const Vector& mean, const Matrix& cov, double level,
                                       int points);

/// Each command writes its CSV files into options.out_dir and returns their
/// paths.
std::vector<std::filesystem::path> cmd_illustrate(const CommandOptions& options);
std::filesystem::path cmd_positioning(const CommandOptions& options);
std::filesystem::path cmd_tracking(const CommandOptions& options);

/// 2 for configuration errors, 3 for numeric failures.
int exit_code_for(const Error& error);

}  // namespace dbound::cli
