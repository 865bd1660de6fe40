#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "shocklab/polytrig.hpp"

namespace shocklab {

/// Flux/entropy pair (Q, eta) of  u_t + Q(u)_x = eta'(u)_xx  together with
/// closed-form derivatives up to third order and the entropy flux G with
/// G' = Q' eta'.
///
/// Values are immutable after construction. The convexity constant Lambda is
/// derived from dense sampling of Q'' and eta'' over the validity interval
/// and is +inf when either is not bounded away from zero there.
class ModelSpec {
 public:
  static constexpr double kUnbounded = std::numeric_limits<double>::infinity();

  /// Validity interval is |u - center| < radius.
  ModelSpec(std::string name, PolyTrig flux, PolyTrig entropy, double radius = kUnbounded,
            double center = 0.0);

  const std::string& name() const { return name_; }

  double Q(double u) const { return q_[0](u); }
  double Q1(double u) const { return q_[1](u); }
  double Q2(double u) const { return q_[2](u); }
  double Q3(double u) const { return q_[3](u); }
  double eta(double u) const { return eta_[0](u); }
  double eta1(double u) const { return eta_[1](u); }
  double eta2(double u) const { return eta_[2](u); }
  double eta3(double u) const { return eta_[3](u); }
  double G(double u) const { return g_(u); }

  /// Inverse of eta' restricted to the validity interval.
  double eta1_inverse(double y) const;

  double Lambda() const { return lambda_; }
  bool uniformly_convex() const { return lambda_ < kUnbounded; }
  double radius() const { return radius_; }
  double center() const { return center_; }
  bool in_radius(double u) const { return std::abs(u - center_) < radius_; }
  /// Throws DomainError when u is outside the validity interval.
  void require_in_radius(double u) const;

  /// Finite interval used for sampling: the validity interval, capped at
  /// +-10 around the center for unbounded models.
  double sample_lo() const;
  double sample_hi() const;

  const PolyTrig& flux() const { return q_[0]; }
  const PolyTrig& entropy() const { return eta_[0]; }

 private:
  std::string name_;
  PolyTrig q_[4];
  PolyTrig eta_[4];
  PolyTrig g_;
  double radius_;
  double center_;
  double lambda_;
};

namespace models {
/// Q = eta = u^2/2.
ModelSpec burgers();
/// Q = u^2/2 + 0.1 sin u, eta = u^2/2.
ModelSpec sine_flux();
/// Q = u^2/2, eta = u^2/2 + u^4/8, valid for |u| < 1.
ModelSpec quartic_entropy();
/// Looks up one of the built-in models by name; throws ConfigError otherwise.
ModelSpec by_name(const std::string& name);
}  // namespace models

enum class Potential { flux, entropy, entropy_derivative };

/// f(x|y) = f(x) - f(y) - f'(y)(x - y) for any callable pair (f, f').
template <class F, class F1>
double relative(F&& f, F1&& f1, double x, double y) {
  return f(x) - f(y) - f1(y) * (x - y);
}

/// Relative quantity of Q, eta or eta' with radius checks.
double relative(const ModelSpec& model, Potential which, double x, double y);

/// F(x;y) = G(x) - G(y) - eta'(y) [Q(x) - Q(y)].
double relative_flux_F(const ModelSpec& model, double x, double y);

/// sigma = (Q(s_-) - Q(s_+)) / (s_- - s_+).
double rankine_hugoniot_speed(const ModelSpec& model, double s_minus, double s_plus);

/// Model in which the shock s_minus -> s_plus is stationary and centered.
///
/// The state is translated by the midpoint m, the flux is
/// Q~(x) = Q(x - shift_a) + tilt_b x + offset_c with shift_a = -m,
/// tilt_b = -sigma and offset_c = -Q(m), and eta~(x) = eta(x + m) - eta(m)
/// - eta'(m) x so that eta~'(0) = 0. Second derivatives are preserved.
struct FluxNormalization {
  ModelSpec model;
  double shift_a;
  double tilt_b;
  double offset_c;
  double eps;
};

FluxNormalization normalize_flux(const ModelSpec& model, double s_minus, double s_plus);

}  // namespace shocklab
