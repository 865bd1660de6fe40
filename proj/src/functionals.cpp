#include "shocklab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

constexpr double kRatioSkip = 1e-6;
// Relative allowance for round-off in the ratio windows.
constexpr double kRatioSlack = 1e-6;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw EvaluationError(std::string("non-finite integrand in ") + what);
}

// Pointwise relative quantities at one node.
struct Local {
  double w, er, qr, e1r, F;
};

inline Local local_terms(const ModelSpec& m, double u, double s) {
  const double e1u = m.eta1(u), e1s = m.eta1(s);
  const double du = u - s;
  const double Qu = m.Q(u), Qs = m.Q(s);
  return {e1u - e1s,
          m.eta(u) - m.eta(s) - e1s * du,
          Qu - Qs - m.Q1(s) * du,
          e1u - e1s - m.eta2(s) * du,
          m.G(u) - m.G(s) - e1s * (Qu - Qs)};
}

}  // namespace

TaylorWindows taylor_windows(const ModelSpec& model) {
  const double L = model.Lambda();
  double e3 = 0.0, q1 = 0.0, e1lo = model.eta1(model.sample_lo()), e1hi = model.eta1(model.sample_hi());
  const int n = 4096;
  for (int k = 0; k <= n; ++k) {
    const double v = model.sample_lo() + (model.sample_hi() - model.sample_lo()) * k / n;
    e3 = std::max(e3, std::abs(model.eta3(v)));
    q1 = std::max(q1, std::abs(model.Q1(v)));
  }
  const double L2 = L * L, L3 = L2 * L;
  return {1.0 / (2.0 * L3), 0.5 * L3, 0.5 * L2 * e3, 1.0 - L2, 1.0 - 1.0 / L2,
          0.5 * L2 * (L * q1 + L * (e1hi - e1lo))};
}

void check_taylor_ratios(const ModelSpec& model, const TaylorWindows& win, double u, double s) {
  const Local t = local_terms(model, u, s);
  if (std::abs(t.w) < kRatioSkip) return;
  const double w2 = t.w * t.w;
  auto in = [](double v, double lo, double hi) {
    return v >= lo - kRatioSlack * std::abs(lo) - 1e-12 && v <= hi + kRatioSlack * std::abs(hi) + 1e-12;
  };
  auto fail = [&](const char* which, double ratio) {
    std::ostringstream os;
    os << "Taylor ratio " << which << " = " << ratio << " outside its window at u = " << u << ", s = " << s;
    throw EvaluationError(os.str());
  };
  if (!in(t.qr / w2, win.quadratic_lo, win.quadratic_hi)) fail("Q(u|s)/w^2", t.qr / w2);
  if (!in(t.er / w2, win.quadratic_lo, win.quadratic_hi)) fail("eta(u|s)/w^2", t.er / w2);
  if (!in(std::abs(t.e1r) / w2, 0.0, win.eta1_cubic)) fail("|eta'(u|s)|/w^2", std::abs(t.e1r) / w2);
  if (!in(t.e1r / t.w, win.eta1_lin_lo, win.eta1_lin_hi)) fail("eta'(u|s)/w", t.e1r / t.w);
  if (!in(std::abs(t.F) / w2, 0.0, win.flux_F)) fail("|F(u;s)|/w^2", std::abs(t.F) / w2);
}

FunctionalEvaluator::FunctionalEvaluator(const ModelSpec& model, const ShockProfile& profile,
                                         const WeightFunction& weight)
    : model_(model), profile_(profile), weight_(weight), windows_(taylor_windows(model)) {
  const auto n = static_cast<std::size_t>(profile.grid().n_nodes());
  s_.resize(n);
  w_.resize(n);
  a_.resize(n);
  dydx_.resize(n);
}

void FunctionalEvaluator::prepare(std::span<const double> u, double gamma) {
  if (u.size() != s_.size()) throw PreconditionError("field and profile grids differ");
  profile_.sample_shifted(gamma, s_);
}

FunctionalReport FunctionalEvaluator::x_space(std::span<const double> u, double gamma) {
  prepare(u, gamma);
  const double k = weight_.slope();
  const double c0 = profile_.flux_level();
  const double dx = profile_.grid().dx();
  const std::size_t n = u.size();
  double E = 0, Y = 0, B = 0, W2 = 0, Em = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = s_[i], ui = u[i];
#ifndef NDEBUG
    check_taylor_ratios(model_, windows_, ui, s);
#endif
    const double e2s = model_.eta2(s);
    const double q1s = model_.Q1(s);
    const double sp = (model_.Q(s) - c0) / e2s;
    const double a = 1.0 - k * model_.eta1(s);
    const double a1 = -k * e2s * sp;
    const double a2 = -k * q1s * sp;
    const Local t = local_terms(model_, ui, s);
    const double f = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    E += f * a * t.er;
    Em += f * a * (std::abs(model_.eta(ui)) + std::abs(model_.eta(s)) + std::abs(model_.eta1(s) * (ui - s)));
    Y += f * (a1 * t.er - a * sp * e2s * (ui - s));
    B += f * (a1 * t.F - a * e2s * sp * t.qr + 0.5 * a2 * t.w * t.w + a * t.e1r * q1s * sp);
    W2 += f * t.w * t.w * (-e2s * sp);
    w_[i] = t.w;
    a_[i] = a;
  }
  double D = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double g = (w_[i + 1] - w_[i]) / dx;
    D += 0.5 * (a_[i] + a_[i + 1]) * g * g;
  }
  FunctionalReport r{E * dx, Y * dx, B * dx, D * dx, W2 * dx, Em * dx, CoordinateSystem::x_space};
  require_finite(r.E + r.Y + r.B + r.D + r.w_l2sq, "x-space functionals");
  return r;
}

FunctionalReport FunctionalEvaluator::y_space(std::span<const double> u, double gamma) {
  prepare(u, gamma);
  const double k = weight_.slope();
  const double c0 = profile_.flux_level();
  const double dx = profile_.grid().dx();
  const std::size_t n = u.size();
  double E = 0, Y = 0, B = 0, W2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = s_[i], ui = u[i];
    const double e2s = model_.eta2(s);
    const double q1s = model_.Q1(s);
    const double sp = (model_.Q(s) - c0) / e2s;
    const double dydx = e2s * sp;
    const double dy = -dydx;  // dy measure per unit dx
    const double a = 1.0 - k * model_.eta1(s);
    const Local t = local_terms(model_, ui, s);
    const double f = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    E += f * a * t.er;
    Y += f * (k * t.er + a * (ui - s)) * dy;
    B += f * (k * t.F + a * t.qr + k * q1s / (2.0 * e2s) * t.w * t.w - a * q1s / e2s * t.e1r) * dy;
    W2 += f * t.w * t.w * dy;
    w_[i] = t.w;
    a_[i] = a;
    dydx_[i] = dydx;
  }
  // D = -\int a eta''(s) s' |w_y|^2 dy with w_y = w_x / (dy/dx). Nodes where
  // dy/dx underflows to zero carry no y-measure and are skipped.
  double D = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dydx = 0.5 * (dydx_[i] + dydx_[i + 1]);
    if (dydx == 0.0) continue;
    const double wy = (w_[i + 1] - w_[i]) / dx / dydx;
    const double am = 0.5 * (a_[i] + a_[i + 1]);
    D += -am * dydx * wy * wy * (-dydx);
  }
  FunctionalReport r{E * dx, Y * dx, B * dx, D * dx, W2 * dx, 0.0, CoordinateSystem::y_space};
  require_finite(r.E + r.Y + r.B + r.D + r.w_l2sq, "y-space functionals");
  return r;
}

double FunctionalEvaluator::relative_entropy(std::span<const double> u, double gamma) {
  prepare(u, gamma);
  const double k = weight_.slope();
  const std::size_t n = u.size();
  double E = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = s_[i];
    const double er = model_.eta(u[i]) - model_.eta(s) - model_.eta1(s) * (u[i] - s);
    const double f = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    E += f * (1.0 - k * model_.eta1(s)) * er;
  }
  E *= profile_.grid().dx();
  require_finite(E, "relative entropy");
  return E;
}

double FunctionalEvaluator::l2_distance_sq(std::span<const double> u, double gamma) {
  prepare(u, gamma);
  const std::size_t n = u.size();
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = u[i] - s_[i];
    acc += ((i == 0 || i + 1 == n) ? 0.5 : 1.0) * d * d;
  }
  return acc * profile_.grid().dx();
}

FunctionalReport compute_x_space(const ModelSpec& model, const ShockProfile& profile, const WeightFunction& weight,
                                 std::span<const double> u, double gamma) {
  FunctionalEvaluator ev(model, profile, weight);
  return ev.x_space(u, gamma);
}

FunctionalReport compute_y_space(const ModelSpec& model, const ShockProfile& profile, const WeightFunction& weight,
                                 std::span<const double> u, double gamma) {
  FunctionalEvaluator ev(model, profile, weight);
  return ev.y_space(u, gamma);
}

double relative_entropy(const ModelSpec& model, const ShockProfile& profile, const WeightFunction& weight,
                        std::span<const double> u, double gamma) {
  FunctionalEvaluator ev(model, profile, weight);
  return ev.relative_entropy(u, gamma);
}

YBoundResult y_bounds_l2_check(const FunctionalReport& report, double eps, double lambda, double Lambda,
                               YBoundConstants constants) {
  const double L3 = Lambda * Lambda * Lambda;
  const double rhs = constants.c_y * L3 * (eps / lambda) * std::abs(report.Y) +
                     constants.c_const * L3 * L3 * L3 * eps * eps * eps / (lambda * lambda);
  const double lhs = report.w_l2sq;
  return {lhs <= rhs, lhs, rhs, rhs - lhs};
}

}  // namespace shocklab
