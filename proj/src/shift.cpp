#include "shocklab/shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "shocklab/errors.hpp"
#include "shocklab/solver.hpp"

namespace shocklab {

namespace {

constexpr double kRoundoffFactor = 64.0 * std::numeric_limits<double>::epsilon();

double trapezoid_diff(std::span<const double> u, std::span<const double> s, double dx) {
  double acc = 0.0;
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) acc += ((i == 0 || i + 1 == n) ? 0.5 : 1.0) * (u[i] - s[i]);
  return acc * dx;
}

}  // namespace

double phi_eps(double y, double eps) {
  const double e2 = eps * eps;
  if (y <= -e2) return 1.0;
  if (y >= e2) return -1.0;
  return -y / e2;
}

double gamma_rhs(const FunctionalReport& r, double eps, double eps0) {
  const double phi = phi_eps(r.Y, eps);
  if (phi == 0.0) return 0.0;
  const double excess = std::max(0.0, 2.0 * std::abs(r.B) - (1.0 - eps0) * r.D);
  return phi * (excess / (eps * eps) + 1.0);
}

const char* to_string(EvolutionStatus status) {
  switch (status) {
    case EvolutionStatus::ok: return "ok";
    case EvolutionStatus::blow_up: return "blow_up";
    case EvolutionStatus::radius_violation: return "radius_violation";
    case EvolutionStatus::lipschitz_exceeded: return "lipschitz_exceeded";
    case EvolutionStatus::contraction_violation: return "contraction_violation";
  }
  return "unknown";
}

double lipschitz_a_priori(const FunctionalReport& initial, double eps, double Lambda) {
  const double l2 = 4.0 * Lambda * Lambda;
  return 1.0 + 2.0 / (eps * eps) * std::abs(initial.B) * l2 * std::sqrt(l2);
}

EvolutionResult evolve_coupled(const ModelSpec& model, const ShockProfile& profile, const WeightFunction& weight,
                               const Field& field0, const EvolutionOptions& opt) {
  const Grid& grid = profile.grid();
  const std::size_t n = static_cast<std::size_t>(grid.n_nodes());
  if (field0.u.size() != n) throw PreconditionError("initial field does not match the profile grid");
  if (!(opt.T > 0.0)) throw PreconditionError("final time T must be positive");
  if (!(opt.eps0 > 0.0 && opt.eps0 < 1.0)) throw PreconditionError("eps0 must lie in (0, 1)");

  Solver solver(model, grid, opt.cfl);
  FunctionalEvaluator ev(model, profile, weight);
  const double eps = profile.eps();
  const double dx = grid.dx();
  const auto& s0 = profile.s_values();

  EvolutionResult res;
  Field f = field0;
  solver.check_state(f.u, f.t);

  double dt = opt.dt;
  if (dt <= 0.0) {
    const auto [lo, hi] = std::minmax_element(f.u.begin(), f.u.end());
    dt = stable_dt(model, grid, *lo, *hi, opt.cfl);
  }
  const auto steps = static_cast<std::int64_t>(std::ceil(opt.T / dt - 1e-9));
  dt = opt.T / static_cast<double>(steps);
  res.dt = dt;

  const double mass0 = trapezoid_diff(field0.u, s0, dx);
  double gamma = opt.initial_gamma;
  FunctionalReport rep = ev.x_space(f.u, gamma);
  const double bound = lipschitz_a_priori(rep, eps, model.Lambda());
  res.shift = {gamma, gamma_rhs(rep, eps, opt.eps0), opt.eps0, bound};
  res.initial_l2 = ev.l2_distance_sq(field0.u, 0.0);

  // The discrete equilibrium is not s: rhs_h(s) is an O(dx^2) residual that
  // pairs with eta'(u) - eta'(s) in dE/dt. Bounded by 3 Lambda^{3/2} sqrt(E) |rhs_h(s)|.
  {
    std::vector<double> r0(n);
    solver.rhs(s0, r0);
    double sq = 0.0;
    for (double v : r0) sq += v * v;
    res.truncation_residual = std::sqrt(sq * dx);
  }
  const double trunc_coef = 3.0 * std::pow(model.Lambda(), 1.5) * res.truncation_residual;

  auto record = [&](const FunctionalReport& r, double gdot) {
    DiagnosticsRecord d{f.t, gamma, gdot, r.E, r.Y, r.B, r.D, ev.l2_distance_sq(f.u, gamma),
                        std::abs(trapezoid_diff(f.u, s0, dx) - mass0), r.w_l2sq};
    res.max_l2 = std::max(res.max_l2, d.l2_distance);
    res.records.push_back(d);
  };

  std::vector<double> k[4], stage(n);
  for (auto& v : k) v.resize(n);
  const double c[4] = {0.0, 0.5, 0.5, 1.0};
  const double wgt[4] = {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};

  double next_output = opt.output_interval;
  bool recorded_current = false;
  record(rep, res.shift.gamma_dot);
  recorded_current = true;

  auto fail = [&](EvolutionStatus st, const std::string& msg) {
    res.status = st;
    res.message = msg;
    if (!recorded_current) record(ev.x_space(f.u, gamma), res.shift.gamma_dot);
    res.final_field = f;
    res.shift.gamma = gamma;
    return res;
  };

  for (std::int64_t step = 0; step < steps; ++step) {
    FunctionalReport sr[4];
    double gdot[4];
    double E0 = 0.0;
    try {
      solver.check_dt(f.u, dt);
      for (int j = 0; j < 4; ++j) {
        std::span<const double> us = f.u;
        double gs = gamma;
        if (j > 0) {
          for (std::size_t i = 0; i < n; ++i) stage[i] = f.u[i] + c[j] * dt * k[j - 1][i];
          solver.check_state(stage, f.t + c[j] * dt);
          us = stage;
          gs = gamma + c[j] * dt * gdot[j - 1];
        }
        sr[j] = (j == 0 && step == 0) ? rep : ev.x_space(us, gs);
        gdot[j] = gamma_rhs(sr[j], eps, opt.eps0);
        solver.rhs(us, k[j]);
      }
    } catch (const BlowUp& e) {
      return fail(EvolutionStatus::blow_up, e.what());
    } catch (const RadiusViolation& e) {
      return fail(EvolutionStatus::radius_violation, e.what());
    } catch (const EvaluationError& e) {
      return fail(EvolutionStatus::blow_up, e.what());
    }
    E0 = sr[0].E;

    double g_mean = 0.0, R_mean = 0.0, D_mean = 0.0, scale = 0.0, mag = 0.0;
    for (int j = 0; j < 4; ++j) {
      const double gy = gdot[j] * sr[j].Y;
      g_mean += wgt[j] * gdot[j];
      R_mean += wgt[j] * (gy + sr[j].B - sr[j].D);
      D_mean += wgt[j] * sr[j].D;
      scale = std::max({scale, std::abs(gy), std::abs(sr[j].B), std::abs(sr[j].D)});
      mag = std::max(mag, sr[j].E_magnitude);
      const double ag = std::abs(gdot[j]);
      res.max_abs_gamma_dot = std::max(res.max_abs_gamma_dot, ag);
      if (ag > opt.lipschitz_factor * bound) {
        std::ostringstream os;
        os << "|gamma'| = " << ag << " exceeds " << opt.lipschitz_factor << " x a-priori bound " << bound
           << " at t = " << f.t;
        return fail(EvolutionStatus::lipschitz_exceeded, os.str());
      }
    }

    for (std::size_t i = 0; i < n; ++i)
      f.u[i] += dt * (wgt[0] * k[0][i] + wgt[1] * k[1][i] + wgt[2] * k[2][i] + wgt[3] * k[3][i]);
    f.t = opt.T * static_cast<double>(step + 1) / static_cast<double>(steps);
    gamma += dt * g_mean;
    recorded_current = false;
    try {
      solver.check_state(f.u, f.t);
      rep = ev.x_space(f.u, gamma);
    } catch (const BlowUp& e) {
      return fail(EvolutionStatus::blow_up, e.what());
    } catch (const RadiusViolation& e) {
      return fail(EvolutionStatus::radius_violation, e.what());
    } catch (const EvaluationError& e) {
      return fail(EvolutionStatus::blow_up, e.what());
    }
    mag = std::max(mag, rep.E_magnitude);

    const double dE = rep.E - E0;
    const double floor = kRoundoffFactor * mag;
    const double trunc = trunc_coef * std::sqrt(std::max({E0, rep.E, 0.0}));
    const double tol_step = opt.slack_constant * (dt * dt + dx * dx) * dt * scale + trunc * dt + floor;
    const double excess = dE + opt.eps0 * D_mean * dt - tol_step;
    const double id_err = std::abs(dE / dt - R_mean);
    const double id_tol = (opt.identity_relative + opt.identity_constant * dx * dx) * scale + trunc + floor / dt;
    res.worst_slack = std::max(res.worst_slack, excess);
    if (id_tol > 0.0) res.worst_identity_ratio = std::max(res.worst_identity_ratio, id_err / id_tol);
    else if (id_err > 0.0) res.worst_identity_ratio = std::numeric_limits<double>::infinity();
    if (opt.keep_trace) res.trace.push_back({f.t, dE, R_mean, D_mean, scale, excess, id_err, id_tol});
    res.steps = step + 1;
    res.shift.gamma_dot = gdot[0];

    if (opt.enforce_contraction && excess > 0.0) {
      std::ostringstream os;
      os << "E increased beyond the per-step slack at t = " << f.t << ": dE = " << dE << ", -eps0 D dt = "
         << -opt.eps0 * D_mean * dt << ", slack = " << tol_step;
      return fail(EvolutionStatus::contraction_violation, os.str());
    }

    const bool last = step + 1 == steps;
    if (opt.output_interval <= 0.0 || last || f.t >= next_output - 1e-9 * dt) {
      record(rep, gamma_rhs(rep, eps, opt.eps0));
      recorded_current = true;
      if (opt.output_interval > 0.0)
        while (next_output <= f.t + 1e-9 * dt) next_output += opt.output_interval;
    }
  }
  res.shift.gamma = gamma;
  res.shift.gamma_dot = gamma_rhs(rep, eps, opt.eps0);
  res.final_field = f;
  return res;
}

}  // namespace shocklab
