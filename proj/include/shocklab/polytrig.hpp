#pragma once

#include <vector>

namespace shocklab {

/// A scalar function from the family spanned by monomials u^n and products
/// u^n * sin(omega * u + phase).
///
/// The family is closed under differentiation, antidifferentiation,
/// multiplication and translation of the argument, so a flux/entropy pair
/// written in it yields exact closed forms for every derivative and for the
/// entropy flux G = \int Q' eta'.
class PolyTrig {
 public:
  struct TrigTerm {
    double coef;
    int power;
    double omega;  // > 0
    double phase;
  };

  PolyTrig() = default;

  /// sum_k coeffs[k] * u^k
  static PolyTrig polynomial(std::vector<double> coeffs);
  /// coef * u^power * sin(omega * u + phase); omega == 0 collapses to a monomial.
  static PolyTrig trig(double coef, int power, double omega, double phase);

  double operator()(double u) const;

  PolyTrig derivative() const;
  /// Antiderivative vanishing at u = 0.
  PolyTrig antiderivative() const;
  /// u -> f(u + shift)
  PolyTrig shifted(double shift) const;

  PolyTrig operator+(const PolyTrig& other) const;
  PolyTrig operator-(const PolyTrig& other) const;
  PolyTrig operator*(const PolyTrig& other) const;
  PolyTrig operator*(double scale) const;

  const std::vector<double>& poly() const { return poly_; }
  const std::vector<TrigTerm>& trig_terms() const { return trig_; }
  bool is_polynomial() const { return trig_.empty(); }
  /// Polynomial degree; -1 for the zero polynomial part.
  int degree() const { return static_cast<int>(poly_.size()) - 1; }

 private:
  void add_poly(int power, double coef);
  void add_trig(double coef, int power, double omega, double phase);
  void compact();

  std::vector<double> poly_;
  std::vector<TrigTerm> trig_;  // sorted by omega
  std::vector<double> cos_phase_, sin_phase_;
};

}  // namespace shocklab
