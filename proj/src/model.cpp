#include "shocklab/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

constexpr int kLambdaSamples = 10000;
constexpr double kLambdaMargin = 1.01;
constexpr double kSampleCap = 10.0;

std::string describe(double u, const ModelSpec& m) {
  std::ostringstream os;
  os << "value " << u << " outside validity interval |u - " << m.center() << "| < " << m.radius()
     << " of model '" << m.name() << "'";
  return os.str();
}

}  // namespace

ModelSpec::ModelSpec(std::string name, PolyTrig flux, PolyTrig entropy, double radius, double center)
    : name_(std::move(name)), radius_(radius), center_(center) {
  if (!(radius > 0.0)) throw PreconditionError("model radius must be positive");
  q_[0] = std::move(flux);
  eta_[0] = std::move(entropy);
  for (int k = 1; k < 4; ++k) {
    q_[k] = q_[k - 1].derivative();
    eta_[k] = eta_[k - 1].derivative();
  }
  g_ = (q_[1] * eta_[1]).antiderivative();

  double qmin = kUnbounded, qmax = -kUnbounded, emin = kUnbounded, emax = -kUnbounded;
  const double lo = sample_lo(), hi = sample_hi();
  for (int i = 0; i <= kLambdaSamples; ++i) {
    const double u = lo + (hi - lo) * i / kLambdaSamples;
    const double q2 = q_[2](u), e2 = eta_[2](u);
    qmin = std::min(qmin, q2);
    qmax = std::max(qmax, q2);
    emin = std::min(emin, e2);
    emax = std::max(emax, e2);
  }
  if (qmin <= 0.0 || emin <= 0.0) {
    lambda_ = kUnbounded;
  } else {
    lambda_ = kLambdaMargin * std::max({1.0, qmax, emax, 1.0 / qmin, 1.0 / emin});
  }
}

double ModelSpec::sample_lo() const {
  return std::isfinite(radius_) ? center_ - radius_ : center_ - kSampleCap;
}

double ModelSpec::sample_hi() const {
  return std::isfinite(radius_) ? center_ + radius_ : center_ + kSampleCap;
}

void ModelSpec::require_in_radius(double u) const {
  if (!in_radius(u)) throw DomainError(describe(u, *this));
}

double ModelSpec::eta1_inverse(double y) const {
  double lo = center_ - 1.0, hi = center_ + 1.0;
  if (std::isfinite(radius_)) {
    lo = center_ - radius_;
    hi = center_ + radius_;
    if (y <= eta1(lo) || y >= eta1(hi)) {
      std::ostringstream os;
      os << "eta' value " << y << " is not attained inside the validity interval of '" << name_ << "'";
      throw DomainError(os.str());
    }
  } else {
    for (int k = 0; k < 200 && eta1(lo) > y; ++k) lo = center_ - 2.0 * (center_ - lo);
    for (int k = 0; k < 200 && eta1(hi) < y; ++k) hi = center_ + 2.0 * (hi - center_);
  }
  double x = std::clamp(center_ + (y - eta1(center_)) / eta2(center_), lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double r = eta1(x) - y;
    if (r == 0.0) return x;
    if (r > 0.0) hi = x; else lo = x;
    double next = x - r / eta2(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  throw SolverFailure("eta' inversion did not converge");
}

namespace models {

ModelSpec burgers() {
  return ModelSpec("burgers", PolyTrig::polynomial({0.0, 0.0, 0.5}), PolyTrig::polynomial({0.0, 0.0, 0.5}));
}

ModelSpec sine_flux() {
  return ModelSpec("sine_flux", PolyTrig::polynomial({0.0, 0.0, 0.5}) + PolyTrig::trig(0.1, 0, 1.0, 0.0),
                   PolyTrig::polynomial({0.0, 0.0, 0.5}));
}

ModelSpec quartic_entropy() {
  return ModelSpec("quartic_entropy", PolyTrig::polynomial({0.0, 0.0, 0.5}),
                   PolyTrig::polynomial({0.0, 0.0, 0.5, 0.0, 0.125}), 1.0);
}

ModelSpec by_name(const std::string& name) {
  if (name == "burgers") return burgers();
  if (name == "sine_flux") return sine_flux();
  if (name == "quartic_entropy") return quartic_entropy();
  throw ConfigError("unknown model '" + name + "'");
}

}  // namespace models

double relative(const ModelSpec& model, Potential which, double x, double y) {
  model.require_in_radius(x);
  model.require_in_radius(y);
  switch (which) {
    case Potential::flux:
      return relative([&](double v) { return model.Q(v); }, [&](double v) { return model.Q1(v); }, x, y);
    case Potential::entropy:
      return relative([&](double v) { return model.eta(v); }, [&](double v) { return model.eta1(v); }, x, y);
    case Potential::entropy_derivative:
      return relative([&](double v) { return model.eta1(v); }, [&](double v) { return model.eta2(v); }, x, y);
  }
  return 0.0;
}

double relative_flux_F(const ModelSpec& model, double x, double y) {
  model.require_in_radius(x);
  model.require_in_radius(y);
  return model.G(x) - model.G(y) - model.eta1(y) * (model.Q(x) - model.Q(y));
}

double rankine_hugoniot_speed(const ModelSpec& model, double s_minus, double s_plus) {
  if (s_minus == s_plus) throw DegenerateInputError("Rankine-Hugoniot speed needs distinct end states");
  return (model.Q(s_minus) - model.Q(s_plus)) / (s_minus - s_plus);
}

FluxNormalization normalize_flux(const ModelSpec& model, double s_minus, double s_plus) {
  if (!(s_minus > s_plus)) throw PreconditionError("normalize_flux requires s_minus > s_plus");
  model.require_in_radius(s_minus);
  model.require_in_radius(s_plus);

  const double mid = 0.5 * (s_minus + s_plus);
  const double eps = 0.5 * (s_minus - s_plus);
  const double sigma = rankine_hugoniot_speed(model, s_minus, s_plus);

  FluxNormalization out{model, -mid, -sigma, -model.Q(mid), eps};
  PolyTrig q = model.flux().shifted(mid) + PolyTrig::polynomial({out.offset_c, out.tilt_b});
  PolyTrig e = model.entropy().shifted(mid) - PolyTrig::polynomial({model.eta(mid), model.eta1(mid)});
  out.model = ModelSpec(model.name(), std::move(q), std::move(e), model.radius(), model.center() - mid);
  return out;
}

}  // namespace shocklab
