// Command-line front end: illustrate | positioning | tracking.

#include "dbound/cli/commands.hpp"
#include "dbound/error.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* cmd, dbound::cli::CommandOptions& options, std::string& preset,
                std::uint64_t& seed, bool stochastic) {
  cmd->add_option("--config", options.config_path, "Scenario config file (key = value, [sections])")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", options.out_dir, "Output directory")->capture_default_str();
  if (!stochastic) return;
  cmd->add_option("--seed", seed, "Seed, overrides the config file");
  cmd->add_option("--preset", preset, "Run count preset: desk (1e3) or paper (1e4)")
      ->check(CLI::IsMember({"desk", "paper"}));
  cmd->add_option("--threads", options.run.threads, "OpenMP threads (0 = default)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag_callback(
      "--serial", [&options] { options.run.execution = dbound::sim::Execution::serial; },
      "Use the serial reference kernels");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate MMSE estimation with a distance bound between two subvectors"};
  app.set_version_flag("--version", dbound::cli::kVersion);
  app.require_subcommand(1);

  dbound::cli::CommandOptions options;
  std::string preset;
  std::uint64_t seed = 0;

  auto* illustrate = app.add_subcommand("illustrate", "Two-object example: means, ellipses, sigma points");
  auto* positioning = app.add_subcommand("positioning", "RMSE sweep over sigma1 or beta");
  auto* tracking = app.add_subcommand("tracking", "Dead-reckoning RMSE over time with PCRBs");
  add_common(illustrate, options, preset, seed, false);
  add_common(positioning, options, preset, seed, true);
  add_common(tracking, options, preset, seed, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto* active = app.get_subcommands().front();
  if (active != illustrate && active->count("--seed")) options.seed = seed;
  if (!preset.empty()) options.preset = dbound::cli::parse_preset(preset);

  const std::string name = active->get_name();
  try {
    if (active == illustrate) {
      for (const auto& path : dbound::cli::cmd_illustrate(options)) std::cout << path.string() << '\n';
    } else if (active == positioning) {
      std::cout << dbound::cli::cmd_positioning(options).string() << '\n';
    } else {
      std::cout << dbound::cli::cmd_tracking(options).string() << '\n';
    }
  } catch (const dbound::Error& e) {
    std::cerr << "dbound " << name << ": " << e.what() << '\n';
    return dbound::cli::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "dbound " << name << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
