#pragma once

#include <span>
#include <vector>

#include "shocklab/grid.hpp"
#include "shocklab/model.hpp"
#include "shocklab/profile.hpp"

namespace shocklab {

/// Default CFL factor for the explicit time step.
inline constexpr double kDefaultCfl = 0.4;

/// Tendency -D_x[Qhat] + D_xx[eta'(u)] of  u_t + Q(u)_x = eta'(u)_xx.
///
/// Qhat is the local Lax-Friedrichs flux
///   Qhat = (Q(uL) + Q(uR))/2 - alpha (uR - uL)/2,  alpha = max(|Q'(uL)|, |Q'(uR)|),
/// on interface states reconstructed linearly with centered slopes, and D_xx
/// is the three-point second difference. The end nodes are Dirichlet and get
/// zero tendency; the reconstruction next to them uses linearly extrapolated
/// ghost values. `out` must have the size of `u`.
void semidiscrete_rhs(const ModelSpec& model, std::span<const double> u, const Grid& grid, std::span<double> out);

/// Interface flux Qhat_{i+1/2}, i = 0..n_cells-1.
void numerical_flux(const ModelSpec& model, std::span<const double> u, std::span<double> flux);

/// Largest admissible step for states in [u_lo, u_hi]:
///   cfl * min(dx / max|Q'|, dx^2 / (2 max eta'')).
double stable_dt(const ModelSpec& model, const Grid& grid, double u_lo, double u_hi, double cfl = kDefaultCfl);

/// Explicit RK4 integrator with reusable stage storage.
class Solver {
 public:
  Solver(ModelSpec model, Grid grid, double cfl = kDefaultCfl);

  const ModelSpec& model() const { return model_; }
  const Grid& grid() const { return grid_; }
  double cfl() const { return cfl_; }

  /// One RK4 step in place. Throws PreconditionError when dt exceeds the
  /// stable step for the current state range, RadiusViolation or BlowUp
  /// when a stage leaves the admissible set.
  void step(Field& field, double dt);

  void rhs(std::span<const double> u, std::span<double> out) const {
    semidiscrete_rhs(model_, u, grid_, out);
  }

  /// Validates a stage state (finite, inside the validity interval).
  void check_state(std::span<const double> u, double t) const;
  /// Throws PreconditionError unless dt satisfies the CFL bound for u.
  void check_dt(std::span<const double> u, double dt) const;

 private:
  ModelSpec model_;
  Grid grid_;
  double cfl_;
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

/// | \int (u1 - s) - \int (u0 - s) | by the trapezoid rule.
double total_mass_deviation(const Field& field0, const Field& field1, const ShockProfile& profile);

}  // namespace shocklab
