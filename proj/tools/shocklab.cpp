#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "shocklab/config.hpp"
#include "shocklab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Weighted relative-entropy laboratory for small viscous shocks"};
  std::string command, config_path, out_dir = "out";
  std::uint64_t seed = 0;
  app.add_option("command", command, "profile | evolve | verify-lemmas | sweep")
      ->required()
      ->check(CLI::IsMember({"profile", "evolve", "verify-lemmas", "sweep"}));
  app.add_option("--config", config_path, "flat JSON experiment description")->required();
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "perturbation / sampling seed");
  app.set_version_flag("--version", SHOCKLAB_VERSION);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return shocklab::kExitConfig;
  }

  shocklab::ExperimentConfig config;
  shocklab::Command cmd;
  try {
    config = shocklab::load_config(config_path);
    cmd = shocklab::command_from_string(command);
    if (config.command && *config.command != cmd)
      std::cerr << "note: config names command '" << shocklab::to_string(*config.command) << "', running '"
                << command << "'\n";
    if (*seed_opt) config.perturbation.seed = seed;
  } catch (const shocklab::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return shocklab::kExitConfig;
  }
  const auto summary = shocklab::run_command(cmd, config, out_dir, std::cerr);
  return summary.exit_code;
}
