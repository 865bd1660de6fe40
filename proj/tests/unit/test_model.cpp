#include <doctest.h>

#include <cmath>
#include <random>

#include "shocklab/errors.hpp"
#include "shocklab/model.hpp"

using namespace shocklab;

TEST_CASE("relative entropy of Burgers") {
  const ModelSpec m = models::burgers();
  CHECK(relative(m, Potential::entropy, 1.0, 0.0) == doctest::Approx(0.5));
  for (double y : {-0.3, 0.0, 2.0}) CHECK(relative(m, Potential::entropy, y, y) == 0.0);
}

TEST_CASE("quartic entropy relative values match a 40-digit evaluation") {
  const ModelSpec m = models::quartic_entropy();
  // eta(0.5) - eta(-0.5) - eta'(-0.5)(1) with eta = u^2/2 + u^4/8
  CHECK(relative(m, Potential::entropy, 0.5, -0.5) == doctest::Approx(0.5625).epsilon(1e-14));
  // G(0.4) - G(-0.2) - eta'(-0.2)(Q(0.4) - Q(-0.2)) with G = \int u (u + u^3/2)
  CHECK(relative_flux_F(m, 0.4, -0.2) == doctest::Approx(0.037296).epsilon(1e-13));
}

TEST_CASE("relative entropy flux of Burgers") {
  const ModelSpec m = models::burgers();
  CHECK(relative_flux_F(m, 1.0, 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  for (double y : {-0.5, 0.25}) CHECK(relative_flux_F(m, y, y) == doctest::Approx(0.0));
}

TEST_CASE("relative quantities outside the radius are rejected") {
  const ModelSpec m = models::quartic_entropy();
  CHECK_THROWS_AS(relative(m, Potential::entropy, 1.2, 0.0), DomainError);
  CHECK_THROWS_AS(relative_flux_F(m, 0.0, -1.0), DomainError);
}

TEST_CASE("entropy flux satisfies G' = Q' eta'") {
  for (const char* name : {"burgers", "sine_flux", "quartic_entropy"}) {
    const ModelSpec m = models::by_name(name);
    for (double u : {-0.7, -0.1, 0.3, 0.8}) {
      const double h = 1e-5;
      const double dG = (m.G(u + h) - m.G(u - h)) / (2 * h);
      CHECK(dG == doctest::Approx(m.Q1(u) * m.eta1(u)).epsilon(1e-8));
    }
  }
}

TEST_CASE("Rankine-Hugoniot speeds") {
  CHECK(rankine_hugoniot_speed(models::burgers(), 1.0, 0.0) == doctest::Approx(0.5));
  CHECK(rankine_hugoniot_speed(models::burgers(), 0.2, -0.2) == doctest::Approx(0.0));
  // (Q(0.1) - Q(-0.1)) / 0.2 with Q = u^2/2 + 0.1 sin u, to 40 digits
  CHECK(rankine_hugoniot_speed(models::sine_flux(), 0.1, -0.1) ==
        doctest::Approx(0.09983341664682815230681419841062202698992).epsilon(1e-15));
  CHECK_THROWS_AS(rankine_hugoniot_speed(models::burgers(), 0.3, 0.3), DegenerateInputError);
}

TEST_CASE("normalization of Burgers") {
  const FluxNormalization n = normalize_flux(models::burgers(), 1.0, 0.0);
  CHECK(n.eps == doctest::Approx(0.5));
  CHECK(n.model.Q(-0.5) == doctest::Approx(n.model.Q(0.5)).epsilon(1e-15));
  CHECK(rankine_hugoniot_speed(n.model, 0.5, -0.5) == doctest::Approx(0.0).epsilon(1e-15));

  const FluxNormalization same = normalize_flux(models::burgers(), 0.1, -0.1);
  CHECK(same.shift_a == 0.0);
  CHECK(same.tilt_b == 0.0);
  CHECK(same.offset_c == 0.0);
}

TEST_CASE("normalized sine flux is stationary to 1e-12") {
  for (auto [sm, sp] : {std::pair{0.1, -0.1}, std::pair{0.4, 0.1}, std::pair{-0.2, -0.6}}) {
    const FluxNormalization n = normalize_flux(models::sine_flux(), sm, sp);
    CHECK(std::abs(n.model.Q(-n.eps) - n.model.Q(n.eps)) <= 1e-12);
    CHECK(std::abs(n.model.eta1(0.0)) <= 1e-15);
  }
}

TEST_CASE("normalization preserves relative quantities") {
  const ModelSpec base = models::quartic_entropy();
  const FluxNormalization n = normalize_flux(base, 0.3, -0.1);
  const double m = 0.1;  // midpoint
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  for (int k = 0; k < 20; ++k) {
    const double x = dist(rng), y = dist(rng);
    CHECK(relative(n.model, Potential::entropy, x - m, y - m) ==
          doctest::Approx(relative(base, Potential::entropy, x, y)).epsilon(1e-12));
    CHECK(relative(n.model, Potential::flux, x - m, y - m) ==
          doctest::Approx(relative(base, Potential::flux, x, y)).epsilon(1e-12));
  }
}

TEST_CASE("convexity constants") {
  CHECK(models::burgers().Lambda() == doctest::Approx(1.01));
  // 1 / min(1 - 0.1 sin u) = 1 / 0.9
  CHECK(models::sine_flux().Lambda() == doctest::Approx(1.01 / 0.9).epsilon(1e-6));
  // eta'' = 1 + 1.5 u^2 on |u| < 1
  CHECK(models::quartic_entropy().Lambda() == doctest::Approx(1.01 * 2.5).epsilon(1e-6));
  for (const char* name : {"burgers", "sine_flux", "quartic_entropy"}) {
    const ModelSpec m = models::by_name(name);
    for (double u = -0.99; u < 0.99; u += 0.01) {
      CHECK(m.Q2(u) <= m.Lambda());
      CHECK(m.eta2(u) >= 1.0 / m.Lambda());
    }
  }
  CHECK_THROWS_AS(models::by_name("nope"), ConfigError);
}

TEST_CASE("eta' inverse") {
  const ModelSpec m = models::quartic_entropy();
  for (double u : {-0.9, -0.2, 0.0, 0.5, 0.95}) CHECK(m.eta1_inverse(m.eta1(u)) == doctest::Approx(u).epsilon(1e-12));
  CHECK_THROWS_AS(m.eta1_inverse(m.eta1(0.999) + 1.0), DomainError);
}
