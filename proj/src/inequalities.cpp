#include "shocklab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "shocklab/format.hpp"
#include "shocklab/parallel.hpp"

namespace shocklab {

namespace {

constexpr double kPi = std::numbers::pi;

double l2_unit(std::span<const double> W) {
  const double h = 1.0 / static_cast<double>(W.size() - 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < W.size(); ++i) acc += ((i == 0 || i + 1 == W.size()) ? 0.5 : 1.0) * W[i] * W[i];
  return acc * h;
}

}  // namespace

// ---------------------------------------------------------------------------

PoincareTerms poincare_terms(std::span<const double> W) {
  const std::size_t n = W.size();
  if (n < 2) throw PreconditionError("need at least two samples on [0, 1]");
  const double h = 1.0 / static_cast<double>(n - 1);
  PoincareTerms t{0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double f = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    const double w = W[i], w2 = w * w;
    t.int_W += f * w;
    t.int_W2 += f * w2;
    t.int_W3 += f * w2 * w;
    t.int_absW3 += f * w2 * std::abs(w);
  }
  t.int_W *= h;
  t.int_W2 *= h;
  t.int_W3 *= h;
  t.int_absW3 *= h;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double xm = (static_cast<double>(i) + 0.5) * h;
    const double g = (W[i + 1] - W[i]) / h;
    t.gradient += xm * (1.0 - xm) * g * g;
  }
  t.gradient *= h;
  return t;
}

double poincare_functional(const PoincareTerms& t, double delta) {
  const double m = t.int_W2 + 2.0 * t.int_W;
  return -m * m / delta + (1.0 + delta) * t.int_W2 + (2.0 / 3.0) * t.int_W3 + delta * t.int_absW3 -
         (1.0 - delta) * t.gradient;
}

double poincare_functional(std::span<const double> W, double delta, double norm_cap) {
  if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
  const PoincareTerms t = poincare_terms(W);
  if (t.int_W2 > norm_cap) {
    std::ostringstream os;
    os << "||W||_2^2 = " << t.int_W2 << " exceeds the cap " << norm_cap;
    throw HypothesisError(os.str());
  }
  return poincare_functional(t, delta);
}

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::constant: return "constant";
    case FamilyKind::fourier: return "fourier";
    case FamilyKind::bump: return "bump";
    case FamilyKind::piecewise: return "piecewise";
  }
  return "?";
}

std::vector<double> TestFunctionFamily::sample(std::uint64_t index) const {
  std::mt19937_64 rng(derive_seed(seed, index));
  const int n = n_points;
  const double h = 1.0 / (n - 1);
  std::vector<double> W(n, 0.0);
  if (kind == FamilyKind::constant) {
    const double r = std::sqrt(norm_cap);
    std::fill(W.begin(), W.end(), uniform(rng, -r, r));
    return W;
  }
  switch (kind) {
    case FamilyKind::fourier: {
      std::vector<double> a(modes), b(modes);
      for (int m = 0; m < modes; ++m) {
        a[m] = uniform(rng, -1.0, 1.0) / (1 + m);
        b[m] = uniform(rng, -1.0, 1.0) / (1 + m);
      }
      for (int i = 0; i < n; ++i) {
        const double x = i * h;
        double acc = 0.0;
        for (int m = 0; m < modes; ++m) acc += a[m] * std::cos(m * kPi * x) + b[m] * std::sin((m + 1) * kPi * x);
        W[i] = acc;
      }
      break;
    }
    case FamilyKind::bump: {
      const double x0 = uniform01(rng), sigma = uniform(rng, 0.02, 0.5);
      const double amp = uniform(rng, -1.0, 1.0), offset = uniform(rng, -1.0, 1.0);
      for (int i = 0; i < n; ++i) {
        const double z = (i * h - x0) / sigma;
        W[i] = offset + amp * std::exp(-z * z);
      }
      break;
    }
    case FamilyKind::piecewise: {
      const int knots = 6;
      std::vector<double> xs(knots), vs(knots);
      for (int k = 0; k < knots; ++k) {
        xs[k] = uniform01(rng);
        vs[k] = uniform(rng, -1.0, 1.0);
      }
      std::sort(xs.begin(), xs.end());
      xs.front() = 0.0;
      xs.back() = 1.0;
      for (int i = 0; i < n; ++i) {
        const double x = i * h;
        const int k = std::min<int>(static_cast<int>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1,
                                    knots - 2);
        const double span = xs[k + 1] - xs[k];
        const double t = span > 0.0 ? (x - xs[k]) / span : 0.0;
        W[i] = vs[k] + t * (vs[k + 1] - vs[k]);
      }
      break;
    }
    case FamilyKind::constant:
      break;
  }
  const double norm2 = l2_unit(W);
  const double target = norm_cap * uniform01(rng);
  if (norm2 > 0.0) {
    const double f = std::sqrt(target / norm2);
    for (auto& v : W) v *= f;
  }
  return W;
}

PoincareSweepReport poincare_sweep(const std::vector<TestFunctionFamily>& families, std::size_t samples_per_family,
                                   const std::vector<double>& deltas) {
  const std::size_t total = families.size() * samples_per_family;
  std::vector<PoincareTerms> terms(total);
  std::vector<double> norms(total);
  parallel_for(total, [&](std::size_t k) {
    const auto& fam = families[k / samples_per_family];
    const auto W = fam.sample(k % samples_per_family);
    terms[k] = poincare_terms(W);
    norms[k] = terms[k].int_W2;
  });
  PoincareSweepReport rep;
  rep.deltas = deltas;
  rep.samples = total;
  rep.max_value.assign(deltas.size(), -std::numeric_limits<double>::infinity());
  rep.positives.assign(deltas.size(), 0);
  rep.worst.resize(deltas.size());
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    for (std::size_t k = 0; k < total; ++k) {
      const auto& fam = families[k / samples_per_family];
      if (norms[k] > fam.norm_cap) continue;  // cannot happen by construction
      const double v = poincare_functional(terms[k], deltas[d]);
      if (v > 0.0) ++rep.positives[d];
      if (v > rep.max_value[d]) {
        rep.max_value[d] = v;
        rep.worst[d] = {fam.kind, k % samples_per_family, deltas[d], v, norms[k]};
      }
    }
  }
  std::vector<std::size_t> order(deltas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deltas[a] < deltas[b]; });
  for (std::size_t i : order) {
    if (rep.positives[i] > 0) break;
    rep.empirical_delta_threshold = deltas[i];
  }
  return rep;
}

// ---------------------------------------------------------------------------

GnResult gn_check(std::span<const double> w, double L, double h, double p, double q, std::optional<double> C_bar) {
  const std::size_t n = w.size();
  if (n < 3) throw PreconditionError("need at least three samples on [-L, L]");
  if (!(h > 0.0 && L > 0.0 && p >= 1.0 && q > 0.0 && q < 1.0))
    throw PreconditionError("gn_check needs h > 0, L > 0, p >= 1, q in (0, 1)");
  const double dy = 2.0 * L / static_cast<double>(n - 1);
  double l2 = 0.0, lhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    l2 += f * w[i] * w[i];
    const double e = w[i] - h;
    if (e > 0.0) lhs += f * std::pow(e, p);
  }
  l2 *= dy;
  lhs *= dy;
  const double cb = C_bar.value_or(l2);
  if (l2 > cb * (1.0 + 1e-12) || cb > 2.0 * h * h * L) {
    std::ostringstream os;
    os << "hypothesis fails: \\int w^2 = " << l2 << ", C_bar = " << cb << ", 2 h^2 L = " << 2.0 * h * h * L;
    throw HypothesisError(os.str());
  }
  double Dt = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double wm = 0.5 * (w[i] + w[i + 1]);
    if (!(std::abs(wm) > h)) continue;
    const double y = -L + (static_cast<double>(i) + 0.5) * dy;
    const double g = (w[i + 1] - w[i]) / dy;
    Dt += (L + y) * (L - y) * g * g;
  }
  Dt *= dy;
  GnResult r{lhs, cb, Dt, 0.0, 0.0};
  r.rhs_core = std::pow(cb / (h * h), q) * std::pow(L, -0.5 * p) * std::pow(Dt, 0.5 * p);
  if (lhs > 0.0) r.ratio = r.rhs_core > 0.0 ? lhs / r.rhs_core : std::numeric_limits<double>::infinity();
  return r;
}

GnSample gn_family_sample(std::uint64_t seed, std::uint64_t index, int n_points, double L) {
  std::mt19937_64 rng(derive_seed(seed, index));
  std::vector<double> w(n_points, 0.0);
  const double dy = 2.0 * L / (n_points - 1);
  auto add_bump = [&](double c, double sigma, double amp) {
    for (int i = 0; i < n_points; ++i) {
      const double z = (-L + i * dy - c) / sigma;
      w[i] += amp * std::exp(-z * z);
    }
  };
  switch (index % 3) {
    case 0:
      add_bump(uniform(rng, -L, L), L * uniform(rng, 0.005, 0.3), uniform(rng, 0.1, 10.0));
      break;
    case 1:
      for (int k = 0; k < 2; ++k)
        add_bump(uniform(rng, -L, L), L * uniform(rng, 0.005, 0.3), uniform(rng, -10.0, 10.0));
      break;
    default: {
      const double c = uniform(rng, -L, L), sigma = L * uniform(rng, 0.05, 0.5);
      const int modes = 6;
      std::vector<double> a(modes);
      for (auto& v : a) v = uniform(rng, -5.0, 5.0);
      for (int i = 0; i < n_points; ++i) {
        const double y = -L + i * dy, z = (y - c) / sigma;
        double acc = 0.0;
        for (int m = 0; m < modes; ++m) acc += a[m] * std::cos((m + 1) * kPi * y / L);
        w[i] = std::exp(-z * z) * acc;
      }
      break;
    }
  }
  double l2 = 0.0;
  for (int i = 0; i < n_points; ++i) l2 += ((i == 0 || i + 1 == n_points) ? 0.5 : 1.0) * w[i] * w[i];
  l2 *= dy;
  const double h_min = std::sqrt(l2 / (2.0 * L));
  return {std::move(w), h_min * (1.0 + 3.0 * uniform01(rng)), L};
}

GnSweepReport gn_sweep(std::uint64_t seed, std::size_t count, double p, double q, int n_points) {
  std::vector<double> ratio(count, 0.0);
  std::vector<char> ok(count, 1);
  parallel_for(count, [&](std::size_t i) {
    const GnSample s = gn_family_sample(seed, i, n_points);
    try {
      ratio[i] = gn_check(s.w, s.L, s.h, p, q).ratio;
    } catch (const HypothesisError&) {
      ok[i] = 0;
    }
  });
  GnSweepReport rep;
  for (std::size_t i = 0; i < count; ++i) {
    if (!ok[i]) {
      ++rep.skipped;
      continue;
    }
    ++rep.samples;
    if (ratio[i] > rep.max_ratio) {
      rep.max_ratio = ratio[i];
      rep.argmax = i;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

SyntheticSetup::SyntheticSetup(const ModelSpec& m, double eps_, double lambda_, const Grid& grid)
    : model(m), profile(solve_profile(m, eps_, grid)), weight(build_weight(profile, m, lambda_)), eps(eps_),
      lambda(lambda_) {
  const double y_left = model.eta1(eps), y_right = model.eta1(-eps);
  const auto& y = profile.y_of_x();
  xi.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) xi[i] = (y[i] - y_right) / (y_left - y_right);
  w_cap = 10.0;
  if (std::isfinite(model.radius())) {
    const double top = model.eta1(model.center() + model.radius());
    const double bottom = model.eta1(model.center() - model.radius());
    w_cap = 0.9 * std::min(top - y_left, y_right - bottom);
  }
}

double WShape::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t m = 0; m < cos_coef.size(); ++m) acc += cos_coef[m] * std::cos(static_cast<double>(m) * kPi * x);
  if (spike_amp != 0.0) {
    const double z = (x - spike_center) / spike_width;
    acc += spike_amp * std::exp(-z * z);
  }
  return scale * acc;
}

std::vector<double> w_values(const SyntheticSetup& setup, const WShape& shape) {
  std::vector<double> w(setup.xi.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = shape(setup.xi[i]);
  return w;
}

std::optional<std::vector<double>> u_from_w(const SyntheticSetup& setup, std::span<const double> w) {
  const auto& s = setup.profile.s_values();
  std::vector<double> u(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i])) return std::nullopt;
    try {
      u[i] = setup.model.eta1_inverse(setup.model.eta1(s[i]) + w[i]);
    } catch (const DomainError&) {
      return std::nullopt;
    }
    if (!setup.model.in_radius(u[i])) return std::nullopt;
  }
  return u;
}

double w_l2_dy(const SyntheticSetup& setup, std::span<const double> w) {
  const auto& s = setup.profile.s_values();
  const auto& sp = setup.profile.sprime_values();
  const std::size_t n = w.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += ((i == 0 || i + 1 == n) ? 0.5 : 1.0) * w[i] * w[i] * (-setup.model.eta2(s[i]) * sp[i]);
  return acc * setup.profile.grid().dx();
}

const char* to_string(SignFamily family) {
  switch (family) {
    case SignFamily::fourier: return "fourier";
    case SignFamily::small_mode: return "small_mode";
    case SignFamily::spike: return "spike";
  }
  return "?";
}

double sign_functional(FunctionalEvaluator& ev, std::span<const double> u, double eps, double eps0, double* scale) {
  const FunctionalReport r = ev.x_space(u, 0.0);
  const double y2 = r.Y * r.Y / (2.0 * eps * eps);
  if (scale) *scale = std::max({y2, std::abs(r.B), r.D});
  return -y2 + r.B - r.D + eps0 * r.D;
}

namespace {

double sup_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Rescales shape so that \int w^2 dy <= cap and sup|w| <= w_cap; returns w.
std::vector<double> project(const SyntheticSetup& setup, WShape& shape, double cap) {
  auto w = w_values(setup, shape);
  const double l2 = w_l2_dy(setup, w);
  double f = 1.0;
  if (l2 > cap) f = std::sqrt(cap / l2);
  const double sup = sup_abs(w) * f;
  if (sup > setup.w_cap) f *= setup.w_cap / sup;
  if (f != 1.0) {
    shape.scale *= f;
    for (auto& v : w) v *= f;
  }
  return w;
}

WShape random_fourier(std::mt19937_64& rng, int modes) {
  WShape s;
  s.cos_coef.resize(modes);
  for (int m = 0; m < modes; ++m) s.cos_coef[m] = uniform(rng, -1.0, 1.0) / (1.0 + m);
  return s;
}

}  // namespace

SignSearchReport functional_sign_search(const SyntheticSetup& setup, const SignSearchOptions& opt) {
  const double cap = opt.C_bar * setup.eps * setup.eps * setup.eps / (setup.lambda * setup.lambda);
  const double small_h = opt.small_h > 0.0 ? opt.small_h : 0.5 * setup.eps;
  const std::size_t N = opt.samples;
  std::vector<double> value(N, -std::numeric_limits<double>::infinity());
  std::vector<WShape> shapes(N);
  std::vector<char> ok(N, 0);

  parallel_for(N, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(opt.seed, i));
    const auto family = static_cast<SignFamily>(i % 3);
    WShape shape;
    switch (family) {
      case SignFamily::fourier:
        shape = random_fourier(rng, opt.modes);
        break;
      case SignFamily::small_mode: {
        shape.cos_coef.assign(opt.modes, 0.0);
        const int m = static_cast<int>(uniform01(rng) * opt.modes);
        shape.cos_coef[m] = uniform(rng, -1.0, 1.0) > 0.0 ? 1.0 : -1.0;
        shape.scale = small_h * uniform01(rng);
        break;
      }
      case SignFamily::spike:
        shape.spike_amp = uniform(rng, -1.0, 1.0) > 0.0 ? 1.0 : -1.0;
        shape.spike_center = uniform01(rng);
        shape.spike_width = uniform(rng, 0.01, 0.1);
        break;
    }
    if (family != SignFamily::small_mode) {
      const auto w0 = w_values(setup, shape);
      const double l2 = w_l2_dy(setup, w0);
      if (l2 > 0.0) shape.scale *= std::sqrt(cap * uniform01(rng) / l2);
    }
    const auto w = project(setup, shape, cap);
    const auto u = u_from_w(setup, w);
    if (!u) return;
    FunctionalEvaluator ev(setup.model, setup.profile, setup.weight);
    value[i] = sign_functional(ev, *u, setup.eps, opt.eps0);
    shapes[i] = shape;
    ok[i] = 1;
  });

  SignSearchReport rep;
  std::size_t best_i = N;
  for (std::size_t i = 0; i < N; ++i) {
    if (!ok[i]) {
      ++rep.skipped;
      continue;
    }
    ++rep.evaluated;
    if (value[i] > rep.max_sampled) {
      rep.max_sampled = value[i];
      best_i = i;
    }
  }
  rep.max_value = rep.max_sampled;
  if (best_i < N) {
    rep.argmax = shapes[best_i];
    rep.argmax_origin = std::string("sample ") + std::to_string(best_i) + " (" +
                        to_string(static_cast<SignFamily>(best_i % 3)) + ")";
  }

  // Annealing over cosine coefficients, several independent chains.
  if (opt.anneal_iterations > 0) {
    const int chains = 4;
    std::vector<AnnealResult> results(chains);
    parallel_for(chains, [&](std::size_t c) {
      std::mt19937_64 rng(derive_seed(opt.seed ^ 0xa11ea1ULL, c));
      FunctionalEvaluator ev(setup.model, setup.profile, setup.weight);
      auto objective = [&](const std::vector<double>& x) -> std::optional<double> {
        WShape s;
        s.cos_coef = x;
        const auto w = project(setup, s, cap);
        const auto u = u_from_w(setup, w);
        if (!u) return std::nullopt;
        return sign_functional(ev, *u, setup.eps, opt.eps0);
      };
      WShape start = random_fourier(rng, opt.modes);
      const double sup0 = sup_abs(w_values(setup, start));
      for (auto& v : start.cos_coef) v *= 0.5 * setup.w_cap / std::max(sup0, 1e-300);
      AnnealOptions ao;
      ao.iterations = opt.anneal_iterations;
      ao.seed = derive_seed(opt.seed, 1000 + c);
      ao.step_start = 0.2 * setup.w_cap;
      ao.step_end = 1e-4 * setup.w_cap;
      results[c] = anneal(start.cos_coef, objective, ao);
    });
    for (int c = 0; c < chains; ++c) {
      if (results[c].best_value > rep.max_annealed) rep.max_annealed = results[c].best_value;
      if (results[c].best_value > rep.max_value) {
        rep.max_value = results[c].best_value;
        rep.argmax = WShape{};
        rep.argmax.cos_coef = results[c].best;
        project(setup, rep.argmax, cap);
        rep.argmax_origin = "annealing chain " + std::to_string(c);
      }
      rep.evaluated += static_cast<std::size_t>(results[c].accepted);
    }
  }

  // Quadrature tolerance at the maximizer: same shape on a grid twice as fine.
  if (std::isfinite(rep.max_value)) {
    const Grid& g = setup.profile.grid();
    SyntheticSetup fine(setup.model, setup.eps, setup.lambda, Grid(g.half_width(), 2 * g.n_cells()));
    const auto w = w_values(fine, rep.argmax);
    const auto u = u_from_w(fine, w);
    FunctionalEvaluator ev(setup.model, setup.profile, setup.weight);
    const auto uc = u_from_w(setup, w_values(setup, rep.argmax));
    double scale = 0.0;
    const double coarse = sign_functional(ev, *uc, setup.eps, opt.eps0, &scale);
    rep.value_scale = scale;
    if (u) {
      FunctionalEvaluator evf(fine.model, fine.profile, fine.weight);
      rep.quadrature_tolerance = std::abs(sign_functional(evf, *u, setup.eps, opt.eps0) - coarse);
    } else {
      rep.quadrature_tolerance = std::numeric_limits<double>::infinity();
    }
  }
  return rep;
}

YBoundSearchReport y_bound_search(const SyntheticSetup& setup, const YBoundSearchOptions& opt) {
  const double Lambda = setup.model.Lambda();
  const std::size_t N = opt.samples;
  std::vector<double> excess(N, -std::numeric_limits<double>::infinity()), lhs(N), rhs(N);
  std::vector<WShape> shapes(N);
  std::vector<char> ok(N, 0);

  auto evaluate = [&](FunctionalEvaluator& ev, std::span<const double> u, double& l, double& r) {
    const FunctionalReport rep = ev.x_space(u, 0.0);
    const YBoundResult y = y_bounds_l2_check(rep, setup.eps, setup.lambda, Lambda, opt.constants);
    l = y.lhs;
    r = y.rhs;
    return y.lhs - y.rhs;
  };

  parallel_for(N, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(opt.seed, i));
    WShape shape = random_fourier(rng, opt.modes);
    const double sup = sup_abs(w_values(setup, shape));
    // Log-uniform amplitude between 1e-3 and 1 times the admissible sup.
    shape.scale = setup.w_cap * std::pow(10.0, -3.0 * uniform01(rng)) / std::max(sup, 1e-300);
    const auto w = w_values(setup, shape);
    const auto u = u_from_w(setup, w);
    if (!u) return;
    FunctionalEvaluator ev(setup.model, setup.profile, setup.weight);
    excess[i] = evaluate(ev, *u, lhs[i], rhs[i]);
    shapes[i] = shape;
    ok[i] = 1;
  });

  YBoundSearchReport rep;
  for (std::size_t i = 0; i < N; ++i) {
    if (!ok[i]) {
      ++rep.skipped;
      continue;
    }
    ++rep.evaluated;
    if (excess[i] > 0.0) ++rep.violations;
    if (excess[i] > rep.worst_excess_sampled) {
      rep.worst_excess_sampled = excess[i];
      rep.worst_lhs = lhs[i];
      rep.worst_rhs = rhs[i];
      rep.argmax = shapes[i];
    }
  }
  rep.worst_excess = rep.worst_excess_sampled;

  if (opt.anneal_iterations > 0) {
    const int chains = 4;
    std::vector<AnnealResult> results(chains);
    std::vector<double> best_l(chains), best_r(chains);
    parallel_for(chains, [&](std::size_t c) {
      std::mt19937_64 rng(derive_seed(opt.seed ^ 0xb0b0ULL, c));
      FunctionalEvaluator ev(setup.model, setup.profile, setup.weight);
      auto objective = [&](const std::vector<double>& x) -> std::optional<double> {
        WShape s;
        s.cos_coef = x;
        const auto w = project(setup, s, std::numeric_limits<double>::infinity());
        const auto u = u_from_w(setup, w);
        if (!u) return std::nullopt;
        double l, r;
        return evaluate(ev, *u, l, r);
      };
      WShape start = random_fourier(rng, opt.modes);
      const double sup0 = sup_abs(w_values(setup, start));
      for (auto& v : start.cos_coef) v *= 0.1 * setup.w_cap / std::max(sup0, 1e-300);
      AnnealOptions ao;
      ao.iterations = opt.anneal_iterations;
      ao.seed = derive_seed(opt.seed, 2000 + c);
      ao.step_start = 0.1 * setup.w_cap;
      ao.step_end = 1e-4 * setup.w_cap;
      results[c] = anneal(start.cos_coef, objective, ao);
      WShape s;
      s.cos_coef = results[c].best;
      const auto w = project(setup, s, std::numeric_limits<double>::infinity());
      if (const auto u = u_from_w(setup, w)) evaluate(ev, *u, best_l[c], best_r[c]);
    });
    for (int c = 0; c < chains; ++c) {
      rep.worst_excess_annealed = std::max(rep.worst_excess_annealed, results[c].best_value);
      if (results[c].best_value > rep.worst_excess) {
        rep.worst_excess = results[c].best_value;
        rep.worst_lhs = best_l[c];
        rep.worst_rhs = best_r[c];
        rep.argmax = WShape{};
        rep.argmax.cos_coef = results[c].best;
        project(setup, rep.argmax, std::numeric_limits<double>::infinity());
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::string violations_csv(const std::vector<ViolationRow>& rows) {
  std::ostringstream os;
  os << "suite,seed,index,parameters,value,hypothesis_ok\n";
  for (const auto& r : rows) {
    std::string params = r.parameters;
    std::replace(params.begin(), params.end(), ',', ';');
    os << r.suite << ',' << r.seed << ',' << r.index << ',' << params << ',' << format_double(r.value) << ','
       << (r.hypothesis_ok ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace shocklab
