#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "shocklab/grid.hpp"
#include "shocklab/model.hpp"
#include "shocklab/profile.hpp"

namespace shocklab {

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }
inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

enum class PerturbationKind { none, gaussian, fourier, translation, custom };

PerturbationKind perturbation_kind_from_string(const std::string& name);
const char* to_string(PerturbationKind kind);

/// Initial data u0 = s + p (or a translate of s).
///   gaussian:    p = amplitude exp(-((x - center)/width)^2)
///   fourier:     p = window(x) sum_{m=1..modes} (a_m cos + b_m sin)(m pi (x - center)/width),
///                window = exp(-((x - center)/width)^2), coefficients uniform in [-1, 1]
///                from `seed`, rescaled so that max |p| = amplitude on the grid
///   translation: u0(x) = s(x - amplitude)
///   custom:      p = samples (one value per node)
struct PerturbationSpec {
  PerturbationKind kind = PerturbationKind::none;
  double amplitude = 0.0;
  double width = 1.0;
  double center = 0.0;
  std::uint64_t seed = 0;
  int modes = 8;
  std::vector<double> samples;
};

std::vector<double> perturbation_values(const Grid& grid, const PerturbationSpec& spec);

/// u0 on the profile grid. Throws RadiusViolation (t = 0) when u0 leaves the
/// validity interval of the model.
Field initial_field(const ModelSpec& model, const ShockProfile& profile, const PerturbationSpec& spec);

}  // namespace shocklab
