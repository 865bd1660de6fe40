#include "shocklab/perturbation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "shocklab/errors.hpp"

namespace shocklab {

PerturbationKind perturbation_kind_from_string(const std::string& name) {
  if (name == "none") return PerturbationKind::none;
  if (name == "gaussian") return PerturbationKind::gaussian;
  if (name == "fourier") return PerturbationKind::fourier;
  if (name == "translation") return PerturbationKind::translation;
  if (name == "custom" || name == "custom-samples") return PerturbationKind::custom;
  throw ConfigError("unknown perturbation kind '" + name + "'");
}

const char* to_string(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::none: return "none";
    case PerturbationKind::gaussian: return "gaussian";
    case PerturbationKind::fourier: return "fourier";
    case PerturbationKind::translation: return "translation";
    case PerturbationKind::custom: return "custom-samples";
  }
  return "none";
}

std::vector<double> perturbation_values(const Grid& grid, const PerturbationSpec& spec) {
  const int n = grid.n_nodes();
  std::vector<double> p(n, 0.0);
  switch (spec.kind) {
    case PerturbationKind::none:
    case PerturbationKind::translation:
      break;
    case PerturbationKind::gaussian:
      if (!(spec.width > 0.0)) throw PreconditionError("perturbation width must be positive");
      for (int i = 0; i < n; ++i) {
        const double z = (grid.x(i) - spec.center) / spec.width;
        p[i] = spec.amplitude * std::exp(-z * z);
      }
      break;
    case PerturbationKind::fourier: {
      if (!(spec.width > 0.0)) throw PreconditionError("perturbation width must be positive");
      if (spec.modes < 1) throw PreconditionError("fourier perturbation needs at least one mode");
      std::mt19937_64 rng(spec.seed);
      std::vector<double> a(spec.modes), b(spec.modes);
      for (int m = 0; m < spec.modes; ++m) {
        a[m] = uniform(rng, -1.0, 1.0);
        b[m] = uniform(rng, -1.0, 1.0);
      }
      double peak = 0.0;
      for (int i = 0; i < n; ++i) {
        const double z = (grid.x(i) - spec.center) / spec.width;
        double acc = 0.0;
        for (int m = 0; m < spec.modes; ++m) {
          const double arg = (m + 1) * std::numbers::pi * z;
          acc += a[m] * std::cos(arg) + b[m] * std::sin(arg);
        }
        p[i] = std::exp(-z * z) * acc;
        peak = std::max(peak, std::abs(p[i]));
      }
      if (peak > 0.0)
        for (auto& v : p) v *= spec.amplitude / peak;
      break;
    }
    case PerturbationKind::custom:
      if (static_cast<int>(spec.samples.size()) != n) {
        std::ostringstream os;
        os << "custom perturbation has " << spec.samples.size() << " samples, grid has " << n << " nodes";
        throw PreconditionError(os.str());
      }
      p = spec.samples;
      break;
  }
  return p;
}

Field initial_field(const ModelSpec& model, const ShockProfile& profile, const PerturbationSpec& spec) {
  const Grid& g = profile.grid();
  Field f;
  if (spec.kind == PerturbationKind::translation) {
    f.u.resize(g.n_nodes());
    profile.sample_shifted(-spec.amplitude, f.u);
  } else {
    f.u = profile.s_values();
    const auto p = perturbation_values(g, spec);
    for (std::size_t i = 0; i < f.u.size(); ++i) f.u[i] += p[i];
  }
  for (std::size_t i = 0; i < f.u.size(); ++i) {
    if (!model.in_radius(f.u[i])) {
      std::ostringstream os;
      os << "initial data u = " << f.u[i] << " at x = " << g.x(static_cast<int>(i))
         << " is outside the validity interval of '" << model.name() << "'";
      throw RadiusViolation(os.str(), 0.0);
    }
  }
  return f;
}

}  // namespace shocklab
