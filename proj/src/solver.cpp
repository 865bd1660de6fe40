#include "shocklab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

constexpr int kRangeSamples = 64;
// Relative slack when re-checking a step size chosen from a slightly
// different state range.
constexpr double kDtSlack = 1e-6;

inline double interface_flux(const ModelSpec& model, double um, double u0, double u1, double u2) {
  const double uL = u0 + 0.25 * (u1 - um);
  const double uR = u1 - 0.25 * (u2 - u0);
  const double alpha = std::max(std::abs(model.Q1(uL)), std::abs(model.Q1(uR)));
  return 0.5 * (model.Q(uL) + model.Q(uR)) - 0.5 * alpha * (uR - uL);
}

// Node value with one linearly extrapolated ghost node at each end.
inline double ghost(std::span<const double> u, int k) {
  const int n = static_cast<int>(u.size()) - 1;
  if (k < 0) return 2.0 * u[0] - u[1];
  if (k > n) return 2.0 * u[n] - u[n - 1];
  return u[k];
}

}  // namespace

void numerical_flux(const ModelSpec& model, std::span<const double> u, std::span<double> flux) {
  const int n = static_cast<int>(u.size()) - 1;
  for (int i = 0; i < n; ++i) flux[i] = interface_flux(model, ghost(u, i - 1), u[i], u[i + 1], ghost(u, i + 2));
}

void semidiscrete_rhs(const ModelSpec& model, std::span<const double> u, const Grid& grid, std::span<double> out) {
  const int n = static_cast<int>(u.size()) - 1;
  const double dx = grid.dx();
  const double inv_dx = 1.0 / dx, inv_dx2 = 1.0 / (dx * dx);
  double phi_prev = model.eta1(u[0]);
  double phi = model.eta1(u[1]);
  auto flux_at = [&](int i) { return interface_flux(model, ghost(u, i - 1), u[i], u[i + 1], ghost(u, i + 2)); };
  double f_left = flux_at(0);
  out[0] = 0.0;
  for (int i = 1; i < n; ++i) {
    const double f_right = flux_at(i);
    const double phi_next = model.eta1(u[i + 1]);
    out[i] = -(f_right - f_left) * inv_dx + (phi_next - 2.0 * phi + phi_prev) * inv_dx2;
    f_left = f_right;
    phi_prev = phi;
    phi = phi_next;
  }
  out[n] = 0.0;
}

double stable_dt(const ModelSpec& model, const Grid& grid, double u_lo, double u_hi, double cfl) {
  double qmax = 0.0, emax = 0.0;
  for (int k = 0; k <= kRangeSamples; ++k) {
    const double v = u_lo + (u_hi - u_lo) * k / kRangeSamples;
    qmax = std::max(qmax, std::abs(model.Q1(v)));
    emax = std::max(emax, model.eta2(v));
  }
  const double dx = grid.dx();
  const double adv = qmax > 0.0 ? dx / qmax : std::numeric_limits<double>::infinity();
  return cfl * std::min(adv, dx * dx / (2.0 * emax));
}

Solver::Solver(ModelSpec model, Grid grid, double cfl)
    : model_(std::move(model)), grid_(grid), cfl_(cfl) {
  const auto n = static_cast<std::size_t>(grid_.n_nodes());
  k1_.resize(n);
  k2_.resize(n);
  k3_.resize(n);
  k4_.resize(n);
  tmp_.resize(n);
}

void Solver::check_state(std::span<const double> u, double t) const {
  const bool bounded = std::isfinite(model_.radius());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i])) {
      std::ostringstream os;
      os << "non-finite value at node " << i << ", t = " << t;
      throw BlowUp(os.str(), t);
    }
    if (bounded && !model_.in_radius(u[i])) {
      std::ostringstream os;
      os << "u = " << u[i] << " left the validity interval of '" << model_.name() << "' at x = " << grid_.x(i)
         << ", t = " << t;
      throw RadiusViolation(os.str(), t);
    }
  }
}

void Solver::check_dt(std::span<const double> u, double dt) const {
  const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
  const double limit = stable_dt(model_, grid_, *lo, *hi, cfl_);
  if (!(dt > 0.0) || dt > limit * (1.0 + kDtSlack)) {
    std::ostringstream os;
    os << "time step " << dt << " violates the CFL bound " << limit;
    throw PreconditionError(os.str());
  }
}

void Solver::step(Field& field, double dt) {
  auto& u = field.u;
  const std::size_t n = u.size();
  check_dt(u, dt);
  rhs(u, k1_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + 0.5 * dt * k1_[i];
  check_state(tmp_, field.t + 0.5 * dt);
  rhs(tmp_, k2_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + 0.5 * dt * k2_[i];
  check_state(tmp_, field.t + 0.5 * dt);
  rhs(tmp_, k3_);
  for (std::size_t i = 0; i < n; ++i) tmp_[i] = u[i] + dt * k3_[i];
  check_state(tmp_, field.t + dt);
  rhs(tmp_, k4_);
  for (std::size_t i = 0; i < n; ++i) u[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  field.t += dt;
  check_state(u, field.t);
}

double total_mass_deviation(const Field& field0, const Field& field1, const ShockProfile& profile) {
  const auto& s = profile.s_values();
  if (field0.u.size() != s.size() || field1.u.size() != s.size())
    throw PreconditionError("mass deviation needs fields on the profile grid");
  std::vector<double> d0(s.size()), d1(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    d0[i] = field0.u[i] - s[i];
    d1[i] = field1.u[i] - s[i];
  }
  const double dx = profile.grid().dx();
  return std::abs(trapezoid(d1, dx) - trapezoid(d0, dx));
}

}  // namespace shocklab
