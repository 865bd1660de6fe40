#include "shocklab/polytrig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shocklab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

double wrap_phase(double phase) {
  double p = std::fmod(phase, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  return p;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

PolyTrig PolyTrig::polynomial(std::vector<double> coeffs) {
  PolyTrig f;
  f.poly_ = std::move(coeffs);
  f.compact();
  return f;
}

PolyTrig PolyTrig::trig(double coef, int power, double omega, double phase) {
  PolyTrig f;
  f.add_trig(coef, power, omega, phase);
  f.compact();
  return f;
}

double PolyTrig::operator()(double u) const {
  double acc = 0.0;
  for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) acc = acc * u + *it;
  double omega = 0.0, su = 0.0, cu = 0.0;
  for (std::size_t i = 0; i < trig_.size(); ++i) {
    const auto& t = trig_[i];
    if (t.omega != omega) {
      omega = t.omega;
      su = std::sin(omega * u);
      cu = std::cos(omega * u);
    }
    double p = 1.0;
    for (int k = 0; k < t.power; ++k) p *= u;
    acc += t.coef * p * (su * cos_phase_[i] + cu * sin_phase_[i]);
  }
  return acc;
}

void PolyTrig::add_poly(int power, double coef) {
  if (coef == 0.0) return;
  if (static_cast<int>(poly_.size()) <= power) poly_.resize(power + 1, 0.0);
  poly_[power] += coef;
}

void PolyTrig::add_trig(double coef, int power, double omega, double phase) {
  if (coef == 0.0) return;
  if (omega < 0.0) {
    // sin(-w u + p) = sin(w u + pi - p)
    omega = -omega;
    phase = std::numbers::pi - phase;
  }
  if (omega == 0.0) {
    add_poly(power, coef * std::sin(phase));
    return;
  }
  phase = wrap_phase(phase);
  for (auto& t : trig_) {
    if (t.power == power && t.omega == omega && std::abs(t.phase - phase) < 1e-15) {
      t.coef += coef;
      return;
    }
  }
  trig_.push_back({coef, power, omega, phase});
}

void PolyTrig::compact() {
  while (!poly_.empty() && poly_.back() == 0.0) poly_.pop_back();
  std::erase_if(trig_, [](const TrigTerm& t) { return t.coef == 0.0; });
  std::stable_sort(trig_.begin(), trig_.end(), [](const TrigTerm& a, const TrigTerm& b) { return a.omega < b.omega; });
  cos_phase_.resize(trig_.size());
  sin_phase_.resize(trig_.size());
  for (std::size_t i = 0; i < trig_.size(); ++i) {
    cos_phase_[i] = std::cos(trig_[i].phase);
    sin_phase_[i] = std::sin(trig_[i].phase);
  }
}

PolyTrig PolyTrig::derivative() const {
  PolyTrig d;
  for (std::size_t k = 1; k < poly_.size(); ++k) d.add_poly(static_cast<int>(k) - 1, poly_[k] * k);
  for (const auto& t : trig_) {
    if (t.power > 0) d.add_trig(t.coef * t.power, t.power - 1, t.omega, t.phase);
    d.add_trig(t.coef * t.omega, t.power, t.omega, t.phase + kHalfPi);
  }
  d.compact();
  return d;
}

PolyTrig PolyTrig::antiderivative() const {
  PolyTrig f;
  for (std::size_t k = 0; k < poly_.size(); ++k) f.add_poly(static_cast<int>(k) + 1, poly_[k] / (k + 1.0));
  for (const auto& t : trig_) {
    // \int u^n sin(w u + p) = (1/w) u^n sin(w u + p - pi/2) - (n/w) \int u^(n-1) sin(w u + p - pi/2)
    double coef = t.coef;
    double phase = t.phase;
    for (int n = t.power; n >= 0; --n) {
      f.add_trig(coef / t.omega, n, t.omega, phase - kHalfPi);
      coef *= -n / t.omega;
      phase -= kHalfPi;
    }
  }
  f.compact();
  double at_zero = f(0.0);
  f.add_poly(0, -at_zero);
  f.compact();
  return f;
}

PolyTrig PolyTrig::shifted(double shift) const {
  if (shift == 0.0) return *this;
  PolyTrig f;
  for (std::size_t n = 0; n < poly_.size(); ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      f.add_poly(static_cast<int>(k), poly_[n] * binomial(static_cast<int>(n), static_cast<int>(k)) *
                                          std::pow(shift, static_cast<double>(n - k)));
    }
  }
  for (const auto& t : trig_) {
    for (int k = 0; k <= t.power; ++k) {
      f.add_trig(t.coef * binomial(t.power, k) * std::pow(shift, t.power - k), k, t.omega,
                 t.phase + t.omega * shift);
    }
  }
  f.compact();
  return f;
}

PolyTrig PolyTrig::operator+(const PolyTrig& other) const {
  PolyTrig f = *this;
  for (std::size_t k = 0; k < other.poly_.size(); ++k) f.add_poly(static_cast<int>(k), other.poly_[k]);
  for (const auto& t : other.trig_) f.add_trig(t.coef, t.power, t.omega, t.phase);
  f.compact();
  return f;
}

PolyTrig PolyTrig::operator-(const PolyTrig& other) const { return *this + other * -1.0; }

PolyTrig PolyTrig::operator*(double scale) const {
  PolyTrig f = *this;
  for (auto& c : f.poly_) c *= scale;
  for (auto& t : f.trig_) t.coef *= scale;
  f.compact();
  return f;
}

PolyTrig PolyTrig::operator*(const PolyTrig& other) const {
  PolyTrig f;
  for (std::size_t i = 0; i < poly_.size(); ++i) {
    for (std::size_t j = 0; j < other.poly_.size(); ++j)
      f.add_poly(static_cast<int>(i + j), poly_[i] * other.poly_[j]);
    for (const auto& t : other.trig_)
      f.add_trig(poly_[i] * t.coef, t.power + static_cast<int>(i), t.omega, t.phase);
  }
  for (const auto& t : trig_) {
    for (std::size_t j = 0; j < other.poly_.size(); ++j)
      f.add_trig(t.coef * other.poly_[j], t.power + static_cast<int>(j), t.omega, t.phase);
    for (const auto& o : other.trig_) {
      // sin A sin B = (cos(A-B) - cos(A+B)) / 2, cos x = sin(x + pi/2)
      const int p = t.power + o.power;
      const double c = 0.5 * t.coef * o.coef;
      f.add_trig(c, p, t.omega - o.omega, t.phase - o.phase + kHalfPi);
      f.add_trig(-c, p, t.omega + o.omega, t.phase + o.phase + kHalfPi);
    }
  }
  f.compact();
  return f;
}

}  // namespace shocklab
