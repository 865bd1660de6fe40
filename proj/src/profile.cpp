#include "shocklab/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kOdeAbsTol = 1e-18;
constexpr double kOdeRelTol = 1e-13;

struct HermiteBasis {
  double h00, h10, h01, h11;
};

HermiteBasis hermite(double t) {
  const double t2 = t * t, t3 = t2 * t;
  return {2 * t3 - 3 * t2 + 1, t3 - 2 * t2 + t, -2 * t3 + 3 * t2, t3 - t2};
}

HermiteBasis hermite_derivative(double t) {
  const double t2 = t * t;
  return {6 * t2 - 6 * t, 3 * t2 - 4 * t + 1, -6 * t2 + 6 * t, 3 * t2 - 2 * t};
}

}  // namespace

ShockProfile::ShockProfile(double eps, const Grid& grid, double flux_level, std::vector<double> s,
                           std::vector<double> sprime, std::vector<double> y)
    : eps_(eps), grid_(grid), flux_level_(flux_level), s_(std::move(s)), sprime_(std::move(sprime)),
      y_(std::move(y)) {}

double ShockProfile::s_at(double x) const {
  const double xi = (x + grid_.half_width()) / grid_.dx();
  if (xi < 0.0) return eps_;
  if (xi > grid_.n_cells()) return -eps_;
  const int i = std::min(static_cast<int>(xi), grid_.n_cells() - 1);
  const auto h = hermite(xi - i);
  const double dx = grid_.dx();
  return h.h00 * s_[i] + h.h10 * dx * sprime_[i] + h.h01 * s_[i + 1] + h.h11 * dx * sprime_[i + 1];
}

double ShockProfile::sprime_interp_at(double x) const {
  const double xi = (x + grid_.half_width()) / grid_.dx();
  if (xi < 0.0 || xi > grid_.n_cells()) return 0.0;
  const int i = std::min(static_cast<int>(xi), grid_.n_cells() - 1);
  const auto h = hermite_derivative(xi - i);
  const double dx = grid_.dx();
  return (h.h00 * s_[i] + h.h01 * s_[i + 1]) / dx + h.h10 * sprime_[i] + h.h11 * sprime_[i + 1];
}

void ShockProfile::sample_shifted(double gamma, std::vector<double>& out) const {
  const int n = grid_.n_nodes();
  out.resize(n);
  const double dx = grid_.dx();
  // The fractional offset is the same for every node.
  const double shift_cells = gamma / dx;
  const double whole = std::floor(shift_cells);
  const double t = shift_cells - whole;
  const int offset = static_cast<int>(whole);
  const auto h = hermite(t);
  for (int i = 0; i < n; ++i) {
    const int j = i + offset;
    if (j < 0) {
      out[i] = eps_;
    } else if (j >= grid_.n_cells()) {
      out[i] = (j == grid_.n_cells() && t == 0.0) ? s_.back() : -eps_;
    } else {
      out[i] = h.h00 * s_[j] + h.h10 * dx * sprime_[j] + h.h01 * s_[j + 1] + h.h11 * dx * sprime_[j + 1];
    }
  }
}

namespace {

// (Q(end + d) - Q(end)) / d without cancellation for small d.
double flux_gap_ratio(const ModelSpec& model, double end, double d) {
  if (std::abs(d) > 1e-4 * std::max(std::abs(end), 1e-300)) return (model.Q(end + d) - model.Q(end)) / d;
  return model.Q1(end) + d * (0.5 * model.Q2(end) + d * model.Q3(end) / 6.0);
}

}  // namespace

double truncation_half_width(const ModelSpec& model, double eps, double tol) {
  const double rate_minus = std::abs(model.Q1(eps)) / model.eta2(eps);
  const double rate_plus = std::abs(model.Q1(-eps)) / model.eta2(-eps);
  const double rate = std::min(rate_minus, rate_plus);
  return std::log(4.0 * eps / tol) / rate;
}

ShockProfile solve_profile(const ModelSpec& model, double eps, const Grid& grid) {
  if (!(eps > 0.0)) throw PreconditionError("shock half-strength eps must be positive");
  model.require_in_radius(eps);
  model.require_in_radius(-eps);
  if (!model.uniformly_convex()) throw PreconditionError("profile requires a uniformly convex model");
  const double flux_level = model.Q(eps);
  if (std::abs(model.Q(-eps) - flux_level) > kStationaryTolerance) {
    std::ostringstream os;
    os << "model is not normalized for a stationary shock: |Q(-eps) - Q(eps)| = "
       << std::abs(model.Q(-eps) - flux_level);
    throw PreconditionError(os.str());
  }
  if (grid.n_cells() % 2 != 0) throw PreconditionError("profile grid must have x = 0 as a node");

  const int n = grid.n_nodes();
  const int mid = grid.n_cells() / 2;
  std::vector<double> s(n);
  s[mid] = 0.0;

  // Each half is integrated in z = log|s - s_end| so that the exponential
  // approach to the end state is resolved down to underflow.
  using State = std::array<double, 1>;
  auto integrate_half = [&](double direction, int step) {
    const double end = direction > 0.0 ? -eps : eps;
    const double sign = direction > 0.0 ? 1.0 : -1.0;  // s = end + sign e^z
    auto rhs = [&](const State& st, State& dz, double) {
      const double d = std::exp(st[0]);
      const double s = end + sign * d;
      dz[0] = direction * flux_gap_ratio(model, end, sign * d) / model.eta2(s);
    };
    std::vector<double> times;
    for (int i = mid; i >= 0 && i < n; i += step) times.push_back(std::abs(grid.x(i)));
    State st{std::log(eps)};
    int k = 0;
    auto stepper = odeint::make_dense_output(kOdeAbsTol, kOdeRelTol, odeint::runge_kutta_dopri5<State>());
    odeint::integrate_times(stepper, rhs, st, times.begin(), times.end(), 0.1 * grid.dx(),
                            [&](const State& v, double) { s[mid + step * k++] = end + sign * std::exp(v[0]); });
  };
  integrate_half(1.0, 1);
  integrate_half(-1.0, -1);
  s[mid] = 0.0;

  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(s[i]) || s[i] > eps || s[i] < -eps || (i > 0 && s[i] > s[i - 1])) {
      std::ostringstream os;
      os << "profile is not monotone inside [-eps, eps] at x = " << grid.x(i) << " (s = " << s[i] << ")";
      throw SolverFailure(os.str());
    }
  }

  std::vector<double> sprime(n), y(n);
  for (int i = 0; i < n; ++i) {
    const double end = s[i] < 0.0 ? -eps : eps;
    sprime[i] = (s[i] - end) * flux_gap_ratio(model, end, s[i] - end) / model.eta2(s[i]);
    y[i] = model.eta1(s[i]);
  }
  return ShockProfile(eps, grid, flux_level, std::move(s), std::move(sprime), std::move(y));
}

std::vector<double> profile_residual(const ModelSpec& model, const ShockProfile& profile) {
  static constexpr std::array<double, 4> nodes = {-0.8611363115940526, -0.3399810435848563,
                                                  0.3399810435848563, 0.8611363115940526};
  static constexpr std::array<double, 4> weights = {0.3478548451374538, 0.6521451548625461,
                                                    0.6521451548625461, 0.3478548451374538};
  const Grid& g = profile.grid();
  const double dx = g.dx();
  const auto& s = profile.s_values();
  std::vector<double> res(g.n_cells());
  for (int i = 0; i < g.n_cells(); ++i) {
    const double xm = g.x(i) + 0.5 * dx;
    double integral = 0.0;
    for (int k = 0; k < 4; ++k)
      integral += weights[k] * (model.Q(profile.s_at(xm + 0.5 * dx * nodes[k])) - profile.flux_level());
    integral *= 0.5 * dx;
    res[i] = (model.eta1(s[i + 1]) - model.eta1(s[i]) - integral) / dx;
  }
  return res;
}

TailFit fit_tails(const ShockProfile& profile) {
  const Grid& g = profile.grid();
  const auto& s = profile.s_values();
  const double eps = profile.eps();
  auto fit = [&](bool left) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int i = 0; i < g.n_nodes(); ++i) {
      const double x = g.x(i);
      if (left ? x >= 0.0 : x <= 0.0) continue;
      const double dev = left ? eps - s[i] : s[i] + eps;
      if (!(dev < 1e-3 * eps && dev > 1e-10 * eps)) continue;
      const double ly = std::log(dev);
      sx += x;
      sy += ly;
      sxx += x * x;
      sxy += x * ly;
      ++m;
    }
    if (m < 2) throw SolverFailure("not enough tail samples to fit the decay rate");
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return std::abs(slope);
  };
  return {fit(true), fit(false)};
}

double default_lambda(double eps) { return std::cbrt(eps); }

WeightFunction build_weight(const ShockProfile& profile, const ModelSpec& model, double lambda) {
  if (!(lambda >= 0.0)) throw PreconditionError("weight amplitude lambda must be nonnegative");
  const double eps = profile.eps();
  const double slope = lambda / eps;
  const double amplitude = slope * std::max(std::abs(model.eta1(eps)), std::abs(model.eta1(-eps)));
  if (amplitude > 0.5) {
    std::ostringstream os;
    os << "weight amplitude (lambda/eps) max|eta'(+-eps)| = " << amplitude
       << " exceeds 1/2; a would leave [1/2, 3/2]";
    throw PreconditionError(os.str());
  }
  WeightFunction w;
  w.lambda_ = lambda;
  w.eps_ = eps;
  const auto& s = profile.s_values();
  const auto& sp = profile.sprime_values();
  const std::size_t n = s.size();
  w.a_.resize(n);
  w.a1_.resize(n);
  w.a2_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.a_[i] = 1.0 - slope * model.eta1(s[i]);
    w.a1_[i] = -slope * model.eta2(s[i]) * sp[i];
    w.a2_[i] = -slope * model.Q1(s[i]) * sp[i];
  }
  return w;
}

EntropicCoordinate::EntropicCoordinate(const ShockProfile& profile, const ModelSpec& model)
    : profile_(profile), model_(model), y_(profile.y_of_x()) {
  const auto& s = profile.s_values();
  const auto& sp = profile.sprime_values();
  dydx_.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) dydx_[i] = model.eta2(s[i]) * sp[i];
  y_lo_ = model.eta1(-profile.eps());
  y_hi_ = model.eta1(profile.eps());
}

double EntropicCoordinate::y_at(double x) const { return model_.eta1(profile_.s_at(x)); }

double EntropicCoordinate::x_of(double y) const {
  const Grid& g = profile_.grid();
  if (!(y <= y_.front() && y >= y_.back())) {
    std::ostringstream os;
    os << "entropic value " << y << " outside sampled image [" << y_.back() << ", " << y_.front() << "]";
    throw DomainError(os.str());
  }
  // y is nonincreasing in the node index.
  auto it = std::lower_bound(y_.begin(), y_.end(), y, [](double a, double b) { return a > b; });
  const int j = static_cast<int>(it - y_.begin());
  if (j < static_cast<int>(y_.size()) && y_[j] == y) return g.x(j);
  const int i = std::max(j - 1, 0);
  double lo = g.x(i), hi = g.x(std::min(i + 1, g.n_cells()));
  double x = 0.5 * (lo + hi);
  for (int it_count = 0; it_count < 100; ++it_count) {
    const double r = y_at(x) - y;
    if (r == 0.0) return x;
    if (r > 0.0) lo = x; else hi = x;
    const double d = model_.eta2(profile_.s_at(x)) * profile_.sprime_interp_at(x);
    double next = d != 0.0 ? x - r / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-15 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

}  // namespace shocklab
