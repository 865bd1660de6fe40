#include <doctest.h>

#include <cmath>
#include <random>

#include "shocklab/polytrig.hpp"

using shocklab::PolyTrig;

namespace {

// u^2 + 3u - 1 + 0.5 u sin(2u + 0.3) - 0.2 sin(u)
PolyTrig sample_function() {
  return PolyTrig::polynomial({-1.0, 3.0, 1.0}) + PolyTrig::trig(0.5, 1, 2.0, 0.3) + PolyTrig::trig(-0.2, 0, 1.0, 0.0);
}

double sample_value(double u) { return u * u + 3 * u - 1 + 0.5 * u * std::sin(2 * u + 0.3) - 0.2 * std::sin(u); }

double central_difference(const PolyTrig& f, double u) {
  const double h = 1e-5;
  return (f(u + h) - f(u - h)) / (2 * h);
}

}  // namespace

TEST_CASE("evaluation matches the written-out function") {
  const PolyTrig f = sample_function();
  for (double u : {-2.0, -0.3, 0.0, 0.7, 3.1}) CHECK(f(u) == doctest::Approx(sample_value(u)).epsilon(1e-14));
}

TEST_CASE("derivative agrees with central differences") {
  const PolyTrig f = sample_function();
  const PolyTrig d = f.derivative();
  for (double u : {-1.5, 0.2, 2.0}) CHECK(d(u) == doctest::Approx(central_difference(f, u)).epsilon(1e-8));
}

TEST_CASE("antiderivative inverts the derivative and vanishes at zero") {
  const PolyTrig f = sample_function();
  const PolyTrig F = f.antiderivative();
  CHECK(F(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  const PolyTrig back = F.derivative();
  for (double u : {-1.0, 0.4, 2.5}) CHECK(back(u) == doctest::Approx(f(u)).epsilon(1e-13));
}

TEST_CASE("shift, product and scaling") {
  const PolyTrig f = sample_function();
  const PolyTrig g = PolyTrig::trig(1.0, 2, 3.0, -0.4) + PolyTrig::polynomial({0.5, -1.0});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const double u = dist(rng), c = dist(rng);
    CHECK(f.shifted(c)(u) == doctest::Approx(f(u + c)).epsilon(1e-12));
    CHECK((f * g)(u) == doctest::Approx(f(u) * g(u)).epsilon(1e-12));
    CHECK((f - g)(u) == doctest::Approx(f(u) - g(u)).epsilon(1e-12));
    CHECK((f * 2.5)(u) == doctest::Approx(2.5 * f(u)).epsilon(1e-14));
  }
}

TEST_CASE("zero frequency collapses to a monomial") {
  const PolyTrig f = PolyTrig::trig(2.0, 3, 0.0, 0.5);
  CHECK(f.is_polynomial());
  CHECK(f(1.5) == doctest::Approx(2.0 * std::sin(0.5) * 1.5 * 1.5 * 1.5));
}

TEST_CASE("negative frequency is folded onto a positive one") {
  const PolyTrig f = PolyTrig::trig(1.0, 0, -2.0, 0.1);
  REQUIRE(f.trig_terms().size() == 1);
  CHECK(f.trig_terms()[0].omega == 2.0);
  for (double u : {-1.0, 0.3, 2.0}) CHECK(f(u) == doctest::Approx(std::sin(-2.0 * u + 0.1)).epsilon(1e-14));
}
