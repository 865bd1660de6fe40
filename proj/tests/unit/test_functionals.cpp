#include <doctest.h>

#include <cmath>
#include <random>

#include "shocklab/errors.hpp"
#include "shocklab/functionals.hpp"
#include "shocklab/perturbation.hpp"

using namespace shocklab;

namespace {

struct Setup {
  ModelSpec model;
  ShockProfile profile;
  WeightFunction weight;
};

Setup make_setup(const std::string& name, double eps, double lambda, double L, int n) {
  ModelSpec m = normalize_flux(models::by_name(name), eps, -eps).model;
  ShockProfile p = solve_profile(m, eps, Grid(L, n));
  WeightFunction w = build_weight(p, m, lambda);
  return {m, std::move(p), std::move(w)};
}

std::vector<double> bump(const Setup& s, double amp, double center, double width) {
  std::vector<double> u = s.profile.s_values();
  const Grid& g = s.profile.grid();
  for (int i = 0; i < g.n_nodes(); ++i) u[i] += amp * std::exp(-std::pow((g.x(i) - center) / width, 2));
  return u;
}

double rel_diff(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(a)); }

}  // namespace

TEST_CASE("functionals vanish at the shifted profile") {
  for (const char* name : {"burgers", "sine_flux", "quartic_entropy"}) {
    const Setup s = make_setup(name, 0.1, 0.2, 200.0, 1024);
    FunctionalEvaluator ev(s.model, s.profile, s.weight);
    for (double gamma : {0.0, 4.5, -12.0}) {
      std::vector<double> u;
      s.profile.sample_shifted(gamma, u);
      for (const FunctionalReport& r : {ev.x_space(u, gamma), ev.y_space(u, gamma)}) {
        CHECK(r.E == 0.0);
        CHECK(r.Y == 0.0);
        CHECK(r.B == 0.0);
        CHECK(r.D == 0.0);
        CHECK(r.w_l2sq == 0.0);
      }
    }
  }
}

TEST_CASE("Burgers with lambda = 0 matches a specialized quadratic evaluation") {
  const double eps = 0.1;
  const Setup s = make_setup("burgers", eps, 0.0, 200.0, 2048);
  const std::vector<double> u = bump(s, 0.3, 5.0, 4.0);
  const FunctionalReport r = compute_x_space(s.model, s.profile, s.weight, u, 0.0);

  // a = 1: E = 1/2 \int v^2, Y = -\int s' v, B = -1/2 \int s' v^2, D = \int |v_x|^2
  const Grid& g = s.profile.grid();
  const double dx = g.dx();
  double E = 0, Y = 0, B = 0, D = 0;
  for (int i = 0; i < g.n_nodes(); ++i) {
    const double f = (i == 0 || i == g.n_cells()) ? 0.5 : 1.0;
    const double v = u[i] - s.profile.s_values()[i];
    const double c = std::cosh(0.5 * eps * g.x(i));
    const double sp = -0.5 * eps * eps / (c * c);
    E += f * 0.5 * v * v;
    Y += -f * sp * v;
    B += -f * 0.5 * sp * v * v;
    if (i < g.n_cells()) {
      const double dv = (u[i + 1] - s.profile.s_values()[i + 1] - v) / dx;
      D += dv * dv;
    }
  }
  CHECK(r.E == doctest::Approx(E * dx).epsilon(1e-12));
  CHECK(r.Y == doctest::Approx(Y * dx).epsilon(1e-12));
  CHECK(r.B == doctest::Approx(B * dx).epsilon(1e-12));
  CHECK(r.D == doctest::Approx(D * dx).epsilon(1e-12));
  CHECK(relative_entropy(s.model, s.profile, s.weight, u, 0.0) == doctest::Approx(E * dx).epsilon(1e-12));
}

TEST_CASE("x-space and y-space values agree") {
  SUBCASE("Gaussian bump, Burgers, eps = 0.1") {
    const Setup s = make_setup("burgers", 0.1, default_lambda(0.1), 200.0, 4096);
    const std::vector<double> u = bump(s, 0.5, -3.0, 6.0);
    const FunctionalReport x = compute_x_space(s.model, s.profile, s.weight, u, 1.5);
    const FunctionalReport y = compute_y_space(s.model, s.profile, s.weight, u, 1.5);
    CHECK(rel_diff(x.Y, y.Y) <= 1e-6);
    CHECK(rel_diff(x.B, y.B) <= 1e-6);
    CHECK(rel_diff(x.D, y.D) <= 1e-6);
    CHECK(x.E == doctest::Approx(y.E).epsilon(1e-12));
  }
  SUBCASE("random smooth perturbations on every model") {
    std::mt19937_64 rng(4);
    for (const char* name : {"burgers", "sine_flux", "quartic_entropy"}) {
      const Setup s = make_setup(name, 0.05, default_lambda(0.05), 500.0, 4096);
      FunctionalEvaluator ev(s.model, s.profile, s.weight);
      for (int k = 0; k < 10; ++k) {
        PerturbationSpec p;
        p.kind = PerturbationKind::fourier;
        p.amplitude = uniform(rng, 0.01, 0.5);
        p.width = uniform(rng, 5.0, 40.0);
        p.center = uniform(rng, -100.0, 100.0);
        p.seed = rng();
        const Field f = initial_field(s.model, s.profile, p);
        const double gamma = uniform(rng, -10.0, 10.0);
        const FunctionalReport x = ev.x_space(f.u, gamma);
        const FunctionalReport y = ev.y_space(f.u, gamma);
        CHECK(rel_diff(x.Y, y.Y) <= 1e-6);
        CHECK(rel_diff(x.B, y.B) <= 1e-6);
        CHECK(rel_diff(x.D, y.D) <= 1e-6);
      }
    }
  }
}

TEST_CASE("lambda = 0 reduces Y to the y-integral of u - s") {
  const Setup s = make_setup("quartic_entropy", 0.1, 0.0, 200.0, 2048);
  const std::vector<double> u = bump(s, 0.2, 2.0, 5.0);
  const FunctionalReport y = compute_y_space(s.model, s.profile, s.weight, u, 0.0);
  const Grid& g = s.profile.grid();
  double acc = 0.0;
  for (int i = 0; i < g.n_nodes(); ++i) {
    const double sv = s.profile.s_values()[i];
    const double dy = -s.model.eta2(sv) * s.profile.sprime_values()[i];
    acc += ((i == 0 || i == g.n_cells()) ? 0.5 : 1.0) * (u[i] - sv) * dy;
  }
  CHECK(y.Y == doctest::Approx(acc * g.dx()).epsilon(1e-10));
}

TEST_CASE("relative entropy is comparable to the L2 distance") {
  const Setup s = make_setup("quartic_entropy", 0.1, 0.0, 200.0, 1024);
  FunctionalEvaluator ev(s.model, s.profile, s.weight);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    const std::vector<double> u = bump(s, uniform(rng, -0.8, 0.8), uniform(rng, -50, 50), uniform(rng, 1, 10));
    const double E = ev.relative_entropy(u, 0.0);
    const double l2 = ev.l2_distance_sq(u, 0.0);
    const double L = s.model.Lambda();
    CHECK(E >= l2 / (2 * L));
    CHECK(E <= 0.5 * L * l2);
  }
}

TEST_CASE("doubling the resolution changes each functional by less than 1%") {
  FunctionalReport r[2];
  for (int k = 0; k < 2; ++k) {
    const Setup s = make_setup("sine_flux", 0.05, default_lambda(0.05), 400.0, 1024 << k);
    r[k] = compute_x_space(s.model, s.profile, s.weight, bump(s, 0.3, 10.0, 8.0), 2.0);
  }
  CHECK(r[1].E == doctest::Approx(r[0].E).epsilon(0.01));
  CHECK(r[1].Y == doctest::Approx(r[0].Y).epsilon(0.01));
  CHECK(r[1].B == doctest::Approx(r[0].B).epsilon(0.01));
  CHECK(r[1].D == doctest::Approx(r[0].D).epsilon(0.01));
}

TEST_CASE("pointwise Taylor ratios stay in their windows") {
  std::mt19937_64 rng(6);
  for (const char* name : {"burgers", "sine_flux", "quartic_entropy"}) {
    const ModelSpec m = models::by_name(name);
    const TaylorWindows w = taylor_windows(m);
    CHECK(w.quadratic_lo > 0.0);
    for (int k = 0; k < 2000; ++k) {
      const double u = uniform(rng, -0.95, 0.95), s = uniform(rng, -0.95, 0.95);
      CHECK_NOTHROW(check_taylor_ratios(m, w, u, s));
    }
  }
}

TEST_CASE("Y bound check") {
  const double eps = 0.1, lambda = default_lambda(eps);
  const Setup s = make_setup("burgers", eps, lambda, 200.0, 2048);
  SUBCASE("u = s passes") {
    const FunctionalReport r = compute_x_space(s.model, s.profile, s.weight, s.profile.s_values(), 0.0);
    const YBoundResult y = y_bounds_l2_check(r, eps, lambda, s.model.Lambda());
    CHECK(y.pass);
    CHECK(y.lhs == 0.0);
  }
  SUBCASE("bump perturbation passes with margin") {
    const FunctionalReport r = compute_x_space(s.model, s.profile, s.weight, bump(s, 0.05, 0.0, 5.0), 0.0);
    const YBoundResult y = y_bounds_l2_check(r, eps, lambda, s.model.Lambda());
    CHECK(y.pass);
    CHECK(y.margin > 0.0);
  }
  SUBCASE("the corrected constants are weaker") {
    const FunctionalReport r = compute_x_space(s.model, s.profile, s.weight, bump(s, 0.05, 0.0, 5.0), 0.0);
    const double L = s.model.Lambda();
    CHECK(y_bounds_l2_check(r, eps, lambda, L, YBoundConstants::with_half_factor()).rhs >
          y_bounds_l2_check(r, eps, lambda, L, YBoundConstants::stated()).rhs);
  }
}

TEST_CASE("mismatched grids are rejected") {
  const Setup s = make_setup("burgers", 0.1, 0.1, 100.0, 128);
  std::vector<double> u(10, 0.0);
  CHECK_THROWS_AS(compute_x_space(s.model, s.profile, s.weight, u, 0.0), PreconditionError);
}
