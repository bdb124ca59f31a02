#include "dbound/cli/commands.hpp"

#include "dbound/error.hpp"
#include "dbound/estimator.hpp"
#include "dbound/special_functions.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <sstream>
#include <numbers>

namespace dbound::cli {
namespace {

using Clock = std::chrono::steady_clock;

constexpr const char* kIllustrate = "illustrate";
constexpr const char* kPositioning = "positioning";
constexpr const char* kTracking = "tracking";

ConfigFile load_config(const CommandOptions& options) {
  if (!options.config_path) {
    std::istringstream empty;
    return ConfigFile::parse(empty, "<defaults>");
  }
  ConfigFile cfg = ConfigFile::load(*options.config_path);
  cfg.check_schema(config_schema());
  return cfg;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + format_double(values[i]);
  return out;
}

std::vector<double> to_list(const Vector& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> to_list(const Matrix& m) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

void get_vector(const ConfigFile& cfg, const std::string& section, const std::string& key,
                Vector& out) {
  std::vector<double> values;
  cfg.get(section, key, values);
  if (values.empty()) return;
  if (static_cast<Eigen::Index>(values.size()) != out.size()) {
    throw Error(ErrorCode::config_error, cfg.source() + ":" + std::to_string(cfg.find(section, key)->line) +
                                             ": field '" + key + "': expected " +
                                             std::to_string(out.size()) + " values");
  }
  out = Eigen::Map<const Vector>(values.data(), out.size());
}

void get_matrix(const ConfigFile& cfg, const std::string& section, const std::string& key,
                Matrix& out) {
  std::vector<double> values;
  cfg.get(section, key, values);
  if (values.empty()) return;
  if (static_cast<Eigen::Index>(values.size()) != out.size()) {
    throw Error(ErrorCode::config_error, cfg.source() + ":" + std::to_string(cfg.find(section, key)->line) +
                                             ": field '" + key + "': expected " +
                                             std::to_string(out.size()) + " values (row-major)");
  }
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) out(i, j) = values[i * out.cols() + j];
  }
}

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
}

}  // namespace

Preset parse_preset(const std::string& name) {
  if (name == "desk") return Preset::desk;
  if (name == "paper") return Preset::paper;
  throw Error(ErrorCode::config_error, "preset must be 'desk' or 'paper', got '" + name + "'");
}

std::size_t preset_runs(Preset preset) { return preset == Preset::paper ? 10'000 : 1'000; }

const std::map<std::string, std::set<std::string>>& config_schema() {
  static const std::map<std::string, std::set<std::string>> schema{
      {kIllustrate,
       {"mean_x1", "mean_x2", "cov_x1", "cov_x2", "gamma", "alpha", "ellipse_points", "ellipse_level"}},
      {kPositioning,
       {"sweep", "values", "beta", "sigma1", "gamma", "alpha", "runs", "seed", "max_attempts"}},
      {kTracking,
       {"q_variance", "p0_variance", "steps", "gamma", "alpha", "runs", "seed", "r_meas",
        "truth_step_sigma", "initial_separation"}},
  };
  return schema;
}

IllustrateSettings resolve_illustrate(const CommandOptions& options) {
  const ConfigFile cfg = load_config(options);
  IllustrateSettings s;
  get_vector(cfg, kIllustrate, "mean_x1", s.mean_x1);
  get_vector(cfg, kIllustrate, "mean_x2", s.mean_x2);
  get_matrix(cfg, kIllustrate, "cov_x1", s.cov_x1);
  get_matrix(cfg, kIllustrate, "cov_x2", s.cov_x2);
  cfg.get(kIllustrate, "gamma", s.gamma);
  cfg.get(kIllustrate, "alpha", s.alpha);
  cfg.get(kIllustrate, "ellipse_points", s.ellipse_points);
  cfg.get(kIllustrate, "ellipse_level", s.ellipse_level);
  if (s.ellipse_points < 3) throw Error(ErrorCode::config_error, "ellipse_points must be >= 3");
  return s;
}

PositioningSettings resolve_positioning(const CommandOptions& options) {
  const ConfigFile cfg = load_config(options);
  PositioningSettings s;
  auto& c = s.config;
  c.runs = preset_runs(Preset::desk);
  std::string axis = "sigma1";
  cfg.get(kPositioning, "sweep", axis);
  s.axis = sim::parse_sweep_axis(axis);
  if (s.axis == sim::SweepAxis::sigma1) {
    for (int i = 1; i <= 10; ++i) s.values.push_back(i / 10.0);
  } else {
    for (int i = 0; i <= 12; ++i) s.values.push_back(i / 4.0);
  }
  cfg.get(kPositioning, "values", s.values);
  cfg.get(kPositioning, "beta", c.beta);
  cfg.get(kPositioning, "sigma1", c.sigma1);
  cfg.get(kPositioning, "gamma", c.gamma);
  cfg.get(kPositioning, "alpha", c.alpha);
  cfg.get(kPositioning, "runs", c.runs);
  cfg.get(kPositioning, "seed", c.seed);
  cfg.get(kPositioning, "max_attempts", c.max_attempts);
  if (options.preset) c.runs = preset_runs(*options.preset);
  if (options.seed) c.seed = *options.seed;
  if (c.runs < 1) throw Error(ErrorCode::config_error, "positioning: runs must be >= 1");
  return s;
}

sim::TrackingConfig resolve_tracking(const CommandOptions& options) {
  const ConfigFile cfg = load_config(options);
  sim::TrackingConfig c;
  c.runs = preset_runs(Preset::desk);
  double q_variance = 1e-4;
  double p0_variance = 1e-4;
  double separation = 0.0;
  cfg.get(kTracking, "q_variance", q_variance);
  cfg.get(kTracking, "p0_variance", p0_variance);
  cfg.get(kTracking, "initial_separation", separation);
  cfg.get(kTracking, "steps", c.steps);
  cfg.get(kTracking, "gamma", c.gamma);
  cfg.get(kTracking, "alpha", c.alpha);
  cfg.get(kTracking, "runs", c.runs);
  cfg.get(kTracking, "seed", c.seed);
  cfg.get(kTracking, "r_meas", c.r_meas);
  cfg.get(kTracking, "truth_step_sigma", c.truth_step_sigma);
  c.q = q_variance * Matrix::Identity(4, 4);
  c.p0 = p0_variance * Matrix::Identity(4, 4);
  c.initial_mean = Vector::Zero(4);
  c.initial_mean[2] = separation;
  if (options.preset) c.runs = preset_runs(*options.preset);
  if (options.seed) c.seed = *options.seed;
  try {
    sim::validate(c);
  } catch (const Error& e) {
    throw Error(ErrorCode::config_error, std::string("tracking: ") + e.what());
  }
  return c;
}

std::vector<Vector> confidence_ellipse(const Vector& mean, const Matrix& cov, double level,
                                       int points) {
  const double radius = std::sqrt(chi_square_quantile(2, level));
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrized(cov));
  const Matrix axes =
      solver.eigenvectors() * solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  std::vector<Vector> out;
  out.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / points;
    out.push_back(mean + radius * axes * Eigen::Vector2d(std::cos(theta), std::sin(theta)));
  }
  return out;
}

std::vector<std::filesystem::path> cmd_illustrate(const CommandOptions& options) {
  const IllustrateSettings s = resolve_illustrate(options);
  const Gaussian prior{(Vector(4) << s.mean_x1, s.mean_x2).finished(),
                       direct_sum(s.cov_x1, s.cov_x2)};
  validate(prior);
  const StatePartition partition(2, 0);
  const PreparedProblem problem(partition, DistanceBound(s.gamma), s.alpha);
  const ConstrainedEstimate est = problem.estimate(prior);
  const SigmaPointSet sigma = problem.sigma_points(prior);
  const Gaussian z = prior_to_z(prior, partition);
  const Vector m_z1 = z.mean.head(2);
  const Matrix c_z1 = z.cov.topLeftCorner(2, 2);

  RunManifest manifest{kIllustrate, kVersion, "none", {}, {}, -1.0};
  manifest.config = {{"mean_x1", join(to_list(s.mean_x1))},
                     {"mean_x2", join(to_list(s.mean_x2))},
                     {"cov_x1", join(to_list(s.cov_x1))},
                     {"cov_x2", join(to_list(s.cov_x2))},
                     {"gamma", format_double(s.gamma)},
                     {"alpha", format_double(s.alpha)},
                     {"ellipse_points", std::to_string(s.ellipse_points)},
                     {"ellipse_level", format_double(s.ellipse_level)}};
  manifest.notes = {{"active", est.active ? "true" : "false"},
                    {"eta", format_double(problem.eta())}};

  ensure_dir(options.out_dir);
  auto point_row = [](const std::string& label, const Vector& p) {
    return std::vector<std::string>{label, format_double(p[0]), format_double(p[1])};
  };

  CsvWriter means({{"label", "-"}, {"x", "m"}, {"y", "m"}});
  means.add_row(point_row("m_x1", s.mean_x1));
  means.add_row(point_row("m_x2", s.mean_x2));
  means.add_row(point_row("m_x1_c", est.x_hat.head(2)));
  means.add_row(point_row("m_x2_c", est.x_hat.tail(2)));
  means.add_row(point_row("m_z1", m_z1));
  means.add_row(point_row("m_z1_c", est.z1_moments.mean));

  CsvWriter ellipses({{"label", "-"}, {"x", "m"}, {"y", "m"}});
  auto add_ellipse = [&](const std::string& label, const Vector& mean, const Matrix& cov) {
    for (const auto& p : confidence_ellipse(mean, cov, s.ellipse_level, s.ellipse_points)) {
      ellipses.add_row(point_row(label, p));
    }
  };
  add_ellipse("C_x1", s.mean_x1, s.cov_x1);
  add_ellipse("C_x2", s.mean_x2, s.cov_x2);
  add_ellipse("C_x1_c", est.x_hat.head(2), est.c_hat.topLeftCorner(2, 2));
  add_ellipse("C_x2_c", est.x_hat.tail(2), est.c_hat.bottomRightCorner(2, 2));
  add_ellipse("C_z1", m_z1, c_z1);
  add_ellipse("C_z1_c", est.z1_moments.mean, est.z1_moments.covariance());
  for (int i = 0; i < s.ellipse_points; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / s.ellipse_points;
    ellipses.add_row(point_row("bound", Eigen::Vector2d(s.gamma * std::cos(theta), s.gamma * std::sin(theta))));
  }

  CsvWriter points({{"stage", "-"}, {"index", "-"}, {"dx", "m"}, {"dy", "m"}});
  auto add_points = [&](const std::string& stage, const std::vector<Vector>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      points.add_row({stage, std::to_string(i), format_double(pts[i][0]), format_double(pts[i][1])});
    }
  };
  add_points("before", sigma.raw);
  add_points("after", sigma.projected);

  const std::vector<std::filesystem::path> paths{options.out_dir / "means.csv",
                                                 options.out_dir / "ellipses.csv",
                                                 options.out_dir / "sigma_points.csv"};
  means.write(paths[0], manifest);
  ellipses.write(paths[1], manifest);
  points.write(paths[2], manifest);
  return paths;
}

std::filesystem::path cmd_positioning(const CommandOptions& options) {
  const auto start = Clock::now();
  const PositioningSettings s = resolve_positioning(options);
  const auto result = sim::run_positioning(s.config, s.axis, s.values, options.run);

  const auto& c = s.config;
  RunManifest manifest{kPositioning, kVersion, std::to_string(c.seed), {}, {}, -1.0};
  manifest.config = {{"sweep", std::string(sim::to_string(s.axis))},
                     {"values", join(s.values)},
                     {"beta", format_double(c.beta)},
                     {"sigma1", format_double(c.sigma1)},
                     {"gamma", format_double(c.gamma)},
                     {"alpha", format_double(c.alpha)},
                     {"runs", std::to_string(c.runs)},
                     {"seed", std::to_string(c.seed)},
                     {"max_attempts", std::to_string(c.max_attempts)}};
  manifest.notes = {{"acceptance_rate", join(result.acceptance_rate)},
                    {"stderr", "Monte Carlo standard error of rmse_est"}};

  CsvWriter csv({{"sweep", "m"}, {"rmse_prior", "m"}, {"rmse_est", "m"}, {"pred_rmse", "m"}, {"stderr", "m"}});
  const auto& curve = result.curve;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    csv.add_row({format_double(curve.abscissa[i]), format_double(curve.rmse_prior[i]),
                 format_double(curve.rmse_estimator[i]), format_double(curve.predicted_rmse[i]),
                 format_double(curve.stderr_estimator[i])});
  }
  ensure_dir(options.out_dir);
  manifest.duration_s = elapsed(start);
  const auto path = options.out_dir / "rmse_sweep.csv";
  csv.write(path, manifest);
  return path;
}

std::filesystem::path cmd_tracking(const CommandOptions& options) {
  const auto start = Clock::now();
  const sim::TrackingConfig c = resolve_tracking(options);
  const sim::TrackingResult result = sim::run_tracking(c, options.run);

  RunManifest manifest{kTracking, kVersion, std::to_string(c.seed), {}, {}, -1.0};
  manifest.config = {{"q_variance", format_double(c.q(0, 0))},
                     {"p0_variance", format_double(c.p0(0, 0))},
                     {"initial_separation", format_double(c.initial_mean[2])},
                     {"steps", std::to_string(c.steps)},
                     {"gamma", format_double(c.gamma)},
                     {"alpha", format_double(c.alpha)},
                     {"runs", std::to_string(c.runs)},
                     {"seed", std::to_string(c.seed)},
                     {"r_meas", format_double(c.r_meas)},
                     {"truth_step_sigma", format_double(c.truth_step_sigma)}};
  manifest.notes = {
      {"truth_model",
       "each point steps N(0, truth_step_sigma^2 I2); if farther apart than gamma both are pulled "
       "symmetrically about their midpoint to distance gamma"},
      {"pcrb_lower", "distance measured every step with variance r_meas (m^2)"},
      {"psd_repairs", std::to_string(result.psd_repairs)},
      {"degenerate_steps", std::to_string(result.degenerate_steps)}};

  CsvWriter csv({{"k", "s"}, {"rmse_est", "m"}, {"pcrb_upper", "m"}, {"pcrb_lower", "m"}});
  for (std::size_t k = 0; k < result.curve.size(); ++k) {
    csv.add_row({std::to_string(k + 1), format_double(result.curve.rmse_estimator[k]),
                 format_double(result.pcrb.upper[k]), format_double(result.pcrb.lower[k])});
  }
  ensure_dir(options.out_dir);
  manifest.duration_s = elapsed(start);
  const auto path = options.out_dir / "rmse_time.csv";
  csv.write(path, manifest);
  return path;
}

int exit_code_for(const Error& error) {
  return error.code() == ErrorCode::config_error ? 2 : 3;
}

}  // namespace dbound::cli
