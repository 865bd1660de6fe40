#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "shocklab/config.hpp"
#include "shocklab/constants.hpp"
#include "shocklab/shift.hpp"

namespace shocklab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitAbort = 3;

/// Everything an evolution needs, in the nu = 1 frame: lengths and times of
/// the configuration are divided by nu (x -> x/nu, t -> t/nu).
struct PreparedRun {
  ExperimentConfig config;
  FluxNormalization normalization;
  ModelSpec model;  // normalized
  double eps;
  double lambda;
  double nu;
  double L_core;
  Grid grid;
  ShockProfile profile;
  WeightFunction weight;
  Field field0;
  EvolutionOptions options;
};

ModelSpec base_model(const ExperimentConfig& config);
/// Half-width used when L_dom is not configured (nu = 1 frame):
/// max(truncation_half_width, 20/eps).
double default_core_half_width(const ModelSpec& model, double eps);

PreparedRun prepare_run(const ExperimentConfig& config, const Constants& constants = Constants::defaults());

/// Runs the coupled evolution and maps the records back to physical
/// coordinates: t, gamma, E, l2_distance and mass_deviation are multiplied
/// by nu; gamma_dot, Y, B and D are invariant under the rescaling.
EvolutionResult evolve_physical(const PreparedRun& run);

/// Header `t,gamma,gamma_dot,E,Y,B,D,l2_distance,mass_deviation` and one row
/// per record in shortest round-trip decimal form.
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records);
/// Columns x,s,y,a of the profile in physical x.
std::string profile_csv(const ShockProfile& profile, const WeightFunction& weight, const ModelSpec& model, double nu);

struct RunSummary {
  int exit_code = kExitOk;
  std::string message;
  nlohmann::json results;
};

/// Executes one command and writes its files into out_dir (created if
/// needed). Never throws for configuration or runtime failures; those map to
/// exit codes 2 and 3.
RunSummary run_command(Command command, const ExperimentConfig& config, const std::filesystem::path& out_dir,
                       std::ostream& log);

}  // namespace shocklab
