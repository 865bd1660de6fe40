#pragma once

#include <vector>

#include "shocklab/grid.hpp"
#include "shocklab/model.hpp"

namespace shocklab {

/// Stationary viscous shock s(x) with s(-inf) = eps, s(+inf) = -eps and
/// s(0) = 0, for a model normalized so that Q(-eps) = Q(eps).
///
/// s solves the once-integrated profile equation  (eta'(s))_x = Q(s) - Q(eps),
/// i.e.  s' = (Q(s) - Q(eps)) / eta''(s). Because s' is a function of s
/// alone, every derived quantity at a shifted position x + gamma only needs
/// the interpolated value of s there.
class ShockProfile {
 public:
  ShockProfile(double eps, const Grid& grid, double flux_level, std::vector<double> s,
               std::vector<double> sprime, std::vector<double> y);

  double eps() const { return eps_; }
  const Grid& grid() const { return grid_; }
  /// Q(+-eps).
  double flux_level() const { return flux_level_; }
  const std::vector<double>& s_values() const { return s_; }
  const std::vector<double>& sprime_values() const { return sprime_; }
  /// eta'(s(x)) at the nodes.
  const std::vector<double>& y_of_x() const { return y_; }

  /// Cubic Hermite interpolant of s; constant +-eps beyond the grid.
  double s_at(double x) const;
  /// Derivative of the Hermite interpolant.
  double sprime_interp_at(double x) const;
  /// s' from the profile equation evaluated at the state value s.
  double sprime_of_state(const ModelSpec& model, double s) const {
    return (model.Q(s) - flux_level_) / model.eta2(s);
  }
  /// Fills out[i] = s(x_i + gamma) for every grid node.
  void sample_shifted(double gamma, std::vector<double>& out) const;

 private:
  double eps_;
  Grid grid_;
  double flux_level_;
  std::vector<double> s_;
  std::vector<double> sprime_;
  std::vector<double> y_;
};

/// Tolerance on |Q(-eps) - Q(eps)| accepted as stationary.
inline constexpr double kStationaryTolerance = 1e-12;

/// Integrates the profile equation outward from s(0) = 0 with an adaptive
/// Dormand-Prince 5(4) scheme and samples it on the grid nodes. The grid must
/// contain x = 0 as a node (even n_cells).
ShockProfile solve_profile(const ModelSpec& model, double eps, const Grid& grid);

/// Smallest half width with |s(+-L) -+ eps| < tol, from the linearized tail
/// decay rate |Q'(+-eps)| / eta''(+-eps).
double truncation_half_width(const ModelSpec& model, double eps, double tol = 1e-12);

/// Per-cell residual of the integrated profile equation,
///   [eta'(s_{i+1}) - eta'(s_i) - \int_{x_i}^{x_{i+1}} (Q(s) - Q(eps)) dx] / dx,
/// with the integral taken by 4-point Gauss-Legendre on the interpolant.
std::vector<double> profile_residual(const ModelSpec& model, const ShockProfile& profile);

struct TailFit {
  double rate_left;   // fitted c in |s - eps| ~ C exp(c x), x -> -inf
  double rate_right;  // fitted c in |s + eps| ~ C exp(-c x), x -> +inf
};

/// Least-squares fit of log|s -+ eps| against x over the exponential tails.
TailFit fit_tails(const ShockProfile& profile);

/// Weight a(x) = 1 - (lambda/eps) eta'(s(x)) with a' and a''.
class WeightFunction {
 public:
  double lambda() const { return lambda_; }
  double eps() const { return eps_; }
  const std::vector<double>& a_values() const { return a_; }
  const std::vector<double>& a1_values() const { return a1_; }
  const std::vector<double>& a2_values() const { return a2_; }

  /// (lambda / eps); a = 1 - slope * eta'(s).
  double slope() const { return lambda_ / eps_; }

  friend WeightFunction build_weight(const ShockProfile&, const ModelSpec&, double);

 private:
  double lambda_ = 0.0;
  double eps_ = 1.0;
  std::vector<double> a_, a1_, a2_;
};

/// a = 1 - (lambda/eps) eta'(s), a' = -(lambda/eps) eta''(s) s',
/// a'' = -(lambda/eps) Q'(s) s'.
///
/// Requires (lambda/eps) max|eta'(+-eps)| <= 1/2, so that a stays in [1/2, 3/2].
WeightFunction build_weight(const ShockProfile& profile, const ModelSpec& model, double lambda);

/// Default weight amplitude lambda = eps^(1/3).
double default_lambda(double eps);

/// The monotone map x -> y = eta'(s(x)) and its inverse.
class EntropicCoordinate {
 public:
  EntropicCoordinate(const ShockProfile& profile, const ModelSpec& model);

  const std::vector<double>& y_values() const { return y_; }
  /// dy/dx = eta''(s) s' (negative) at the nodes; quadrature weight is -dy/dx.
  const std::vector<double>& dy_dx() const { return dydx_; }
  /// Image interval (eta'(-eps), eta'(eps)).
  double y_min() const { return y_lo_; }
  double y_max() const { return y_hi_; }
  /// y at an arbitrary position, through the profile interpolant.
  double y_at(double x) const;
  /// x with y(x) = y; the root is bracketed on the nodes and refined by
  /// safeguarded Newton on the interpolant. Throws DomainError when y is
  /// outside the sampled image.
  double x_of(double y) const;

 private:
  ShockProfile profile_;
  ModelSpec model_;
  std::vector<double> y_;
  std::vector<double> dydx_;
  double y_lo_, y_hi_;
};

}  // namespace shocklab
