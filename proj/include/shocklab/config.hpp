#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shocklab/errors.hpp"
#include "shocklab/model.hpp"
#include "shocklab/perturbation.hpp"

namespace shocklab {

/// Malformed configuration with the offending field (or line) attached.
class ConfigFieldError : public ConfigError {
 public:
  ConfigFieldError(const std::string& field, const std::string& what)
      : ConfigError(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Command { profile, evolve, verify_lemmas, sweep };

Command command_from_string(const std::string& name);
const char* to_string(Command command);

/// Flat experiment description. Unset optional values are resolved by
/// `resolve` (lambda = eps^{1/3}, L_dom from the profile decay, ...).
struct ExperimentConfig {
  std::optional<Command> command;

  // model: a built-in name or polynomial coefficients (constant term first)
  std::string model = "burgers";
  std::vector<double> flux_coefficients;
  std::vector<double> entropy_coefficients;
  double radius = ModelSpec::kUnbounded;
  /// Optional shock endpoints; the model is normalized so that they map to
  /// +-eps. Without them the endpoints are s_- = eps, s_+ = -eps.
  std::optional<double> s_minus, s_plus;

  double eps = 0.1;
  double nu = 1.0;
  std::optional<double> lambda;
  double eps0 = 0.01;

  std::optional<double> L_dom;
  int n_cells = 2048;

  double T = 1.0;
  double cfl = 0.4;
  std::optional<double> dt;
  double output_interval = 0.0;

  PerturbationSpec perturbation;

  // verify-lemmas
  std::size_t samples = 10000;
  int anneal_iterations = 10000;
  double delta = 0.01;
  double norm_cap = 4.0;
  double C_bar = 1.0;
  double gn_p = 2.0;
  double gn_q = 0.5;

  /// sweep: field name -> list of values (eps, eps0, seed, amplitude, width,
  /// center, lambda, model, nu, n_cells).
  std::map<std::string, std::vector<nlohmann::json>> grid;

  std::uint64_t seed() const { return perturbation.seed; }
};

/// Parses a JSON document. Throws ConfigFieldError naming the field, or the
/// line and column for syntax errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Checks the invariants (positive physical parameters, nu > 0, perturbation
/// support inside (-L_dom/2, L_dom/2), ...) given the resolved domain size.
void validate_config(const ExperimentConfig& config, double L_dom);

/// Every field, with resolved defaults where known.
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Applies one sweep override (field name, JSON value) to a copy.
ExperimentConfig with_override(const ExperimentConfig& config, const std::string& field,
                               const nlohmann::json& value);

}  // namespace shocklab
