#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shocklab/functionals.hpp"
#include "shocklab/grid.hpp"
#include "shocklab/model.hpp"
#include "shocklab/profile.hpp"

namespace shocklab {

/// 1 for y <= -eps^2, -y/eps^2 in between, -1 for y >= eps^2.
double phi_eps(double y, double eps);

/// Shift velocity Phi_eps(Y) ((2|B| - (1 - eps0) D)_+ / eps^2 + 1).
double gamma_rhs(const FunctionalReport& report, double eps, double eps0);

struct ShiftState {
  double gamma = 0.0;
  double gamma_dot = 0.0;
  double eps0 = 0.01;
  double lipschitz_bound = 0.0;
};

/// One recorded time sample. l2_distance is \int |u - s(. + gamma)|^2 dx and
/// mass_deviation is |\int (u - s) - \int (u0 - s)| dx. w_l2sq is
/// \int w^2 dy (not written to the diagnostics CSV).
struct DiagnosticsRecord {
  double t, gamma, gamma_dot, E, Y, B, D, l2_distance, mass_deviation, w_l2sq;
};

/// Per-step bookkeeping of the contraction and energy-identity checks.
struct StepTrace {
  double t;              // time at the end of the step
  double dE;             // E(t + dt) - E(t)
  double R_mean;         // RK4-weighted gamma' Y + B - D over the stages
  double D_mean;         // RK4-weighted D over the stages
  double scale;          // max |gamma' Y|, |B|, |D| over the stages
  double contraction_excess;  // dE + eps0 D_mean dt - tol_step (<= 0 passes)
  double identity_error;      // |dE/dt - R_mean|
  double identity_tolerance;
};

struct EvolutionOptions {
  double T = 1.0;
  double dt = 0.0;               // 0: choose from the CFL bound of the initial state
  double cfl = 0.4;
  double output_interval = 0.0;  // 0: record every step
  double eps0 = 0.01;
  /// tol_step = slack_constant (dt^2 + dx^2) dt scale + round-off floor.
  double slack_constant = 1.0;
  /// Identity tolerance 1e-3 scale + identity_constant dx^2 scale.
  double identity_relative = 1e-3;
  double identity_constant = 1.0;
  /// Abort with contraction_violation when a step exceeds its slack.
  bool enforce_contraction = true;
  /// Abort when |gamma'| exceeds lipschitz_factor times the a-priori bound.
  double lipschitz_factor = 10.0;
  bool keep_trace = false;
  double initial_gamma = 0.0;
};

enum class EvolutionStatus { ok, blow_up, radius_violation, lipschitz_exceeded, contraction_violation };

const char* to_string(EvolutionStatus status);

struct EvolutionResult {
  EvolutionStatus status = EvolutionStatus::ok;
  std::string message;
  std::vector<DiagnosticsRecord> records;
  std::vector<StepTrace> trace;
  double truncation_residual = 0.0;  // |rhs_h(s)|_2 on the grid
  Field final_field;
  ShiftState shift;
  double dt = 0.0;
  std::int64_t steps = 0;
  double max_abs_gamma_dot = 0.0;
  /// Largest contraction_excess over all steps (negative: margin everywhere).
  double worst_slack = -std::numeric_limits<double>::infinity();
  /// Largest identity_error / identity_tolerance over all steps.
  double worst_identity_ratio = 0.0;
  double initial_l2 = 0.0;  // \int |u0 - s|^2
  double max_l2 = 0.0;      // largest recorded l2_distance
};

/// A-priori bound on |gamma'| from the initial data:
///   1 + (2 / eps^2) |B(u0)| (4 Lambda^2)^{3/2}.
/// It is a heuristic scale (the quantity the abort threshold multiplies),
/// not a proven bound.
double lipschitz_a_priori(const FunctionalReport& initial, double eps, double Lambda);

/// Couples RK4 for the PDE with the shift ODE: at every RK4 stage the
/// functionals are evaluated at the stage state and stage shift, the stage
/// shift velocity comes from gamma_rhs, and the stage shifts are the
/// explicit-Euler predictions gamma_n + c_k dt gamma'_{k-1}. gamma advances
/// with the RK4 weights.
EvolutionResult evolve_coupled(const ModelSpec& model, const ShockProfile& profile, const WeightFunction& weight,
                               const Field& field0, const EvolutionOptions& options);

}  // namespace shocklab
