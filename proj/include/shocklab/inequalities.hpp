#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "shocklab/errors.hpp"
#include "shocklab/functionals.hpp"
#include "shocklab/model.hpp"
#include "shocklab/perturbation.hpp"
#include "shocklab/profile.hpp"

namespace shocklab {

// ---------------------------------------------------------------------------
// Simulated annealing (maximization)

struct AnnealOptions {
  int iterations = 10000;
  double temperature_start = 1.0;  // relative to the magnitude of the current value
  double temperature_end = 1e-4;
  double step_start = 0.5;
  double step_end = 0.005;
  std::uint64_t seed = 0;
};

struct AnnealResult {
  std::vector<double> best;
  double best_value = -std::numeric_limits<double>::infinity();
  int accepted = 0;
  int rejected = 0;  // proposals the objective refused (hypothesis failure)
};

/// Maximizes f over R^n starting from x0. f returns std::nullopt for inputs
/// that fail the hypotheses; those proposals are rejected. Each proposal
/// perturbs every coordinate by a uniform step whose size decays
/// geometrically, like the temperature.
template <class Objective>
AnnealResult anneal(std::vector<double> x0, Objective&& f, const AnnealOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  AnnealResult res;
  std::optional<double> v0 = f(x0);
  if (!v0) throw PreconditionError("annealing start point fails the hypotheses");
  std::vector<double> cur = x0, prop(x0.size());
  double cur_v = *v0;
  res.best = cur;
  res.best_value = cur_v;
  const double n = std::max(1, opt.iterations - 1);
  for (int it = 0; it < opt.iterations; ++it) {
    const double frac = it / n;
    const double temp = opt.temperature_start * std::pow(opt.temperature_end / opt.temperature_start, frac);
    const double step = opt.step_start * std::pow(opt.step_end / opt.step_start, frac);
    for (std::size_t i = 0; i < cur.size(); ++i) prop[i] = cur[i] + step * uniform(rng, -1.0, 1.0);
    const std::optional<double> v = f(prop);
    const double u = uniform01(rng);
    if (!v) {
      ++res.rejected;
      continue;
    }
    const double scale = std::max(std::abs(cur_v), 1e-300);
    if (*v >= cur_v || u < std::exp((*v - cur_v) / (temp * scale))) {
      cur.swap(prop);
      cur_v = *v;
      ++res.accepted;
      if (cur_v > res.best_value) {
        res.best_value = cur_v;
        res.best = cur;
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Poincare-type functional on [0, 1]

struct PoincareTerms {
  double int_W, int_W2, int_W3, int_absW3, gradient;  // gradient = \int x(1-x)|W'|^2
};

/// Integrals of W sampled at n >= 2 equispaced points of [0, 1]: trapezoid
/// rule, gradient term from staggered differences with x(1-x) at midpoints.
PoincareTerms poincare_terms(std::span<const double> W);

/// -(1/delta)(\int W^2 + 2\int W)^2 + (1+delta)\int W^2 + (2/3)\int W^3
///   + delta \int |W|^3 - (1-delta)\int x(1-x)|W'|^2.
/// Throws HypothesisError when \int W^2 exceeds norm_cap.
double poincare_functional(std::span<const double> W, double delta,
                           double norm_cap = std::numeric_limits<double>::infinity());
double poincare_functional(const PoincareTerms& terms, double delta);

enum class FamilyKind { constant, fourier, bump, piecewise };
const char* to_string(FamilyKind kind);

/// Random test functions on [0, 1] with ||W||_2^2 <= norm_cap by construction.
struct TestFunctionFamily {
  FamilyKind kind = FamilyKind::fourier;
  int n_points = 1025;
  double norm_cap = 4.0;
  int modes = 10;
  std::uint64_t seed = 0;

  /// Sample number `index`; deterministic in (seed, index).
  std::vector<double> sample(std::uint64_t index) const;
};

struct PoincareSample {
  FamilyKind kind;
  std::uint64_t index;
  double delta;
  double value;
  double norm2;
};

struct PoincareSweepReport {
  std::vector<double> deltas;
  std::vector<double> max_value;       // per delta
  std::vector<std::size_t> positives;  // per delta
  /// Largest delta of the grid at and below which no positive value appeared
  /// (0 when the smallest delta already fails).
  double empirical_delta_threshold = 0.0;
  std::size_t samples = 0;
  std::vector<PoincareSample> worst;  // per delta
};

/// Evaluates the functional for `samples_per_family` draws of every family
/// at every delta of the grid. Samples run concurrently.
PoincareSweepReport poincare_sweep(const std::vector<TestFunctionFamily>& families, std::size_t samples_per_family,
                                   const std::vector<double>& deltas);

// ---------------------------------------------------------------------------
// Weighted Gagliardo-Nirenberg interpolation on [-L, L]

struct GnResult {
  double lhs;      // \int (w - h)_+^p dy
  double C_bar;    // \int w^2 dy
  double D_tilde;  // \int (L + y)(L - y) 1_{|w| > h} |w'|^2 dy
  double rhs_core; // (C_bar / h^2)^q L^{-p/2} D_tilde^{p/2}
  double ratio;    // lhs / rhs_core (0 when lhs = 0)
};

/// w sampled at equispaced points of [-L, L]. C_bar defaults to \int w^2;
/// throws HypothesisError unless \int w^2 <= C_bar <= 2 h^2 L.
GnResult gn_check(std::span<const double> w, double L, double h, double p, double q,
                  std::optional<double> C_bar = std::nullopt);

struct GnSample {
  std::vector<double> w;
  double h;
  double L;
};

/// Deterministic family of single bumps, bump pairs and windowed Fourier
/// sums on [-L, L], each with an h that satisfies the hypothesis.
GnSample gn_family_sample(std::uint64_t seed, std::uint64_t index, int n_points = 4097, double L = 1.0);

struct GnSweepReport {
  double max_ratio = 0.0;
  std::uint64_t argmax = 0;
  std::size_t samples = 0;
  std::size_t skipped = 0;  // hypothesis failures
};

GnSweepReport gn_sweep(std::uint64_t seed, std::size_t count, double p, double q, int n_points = 4097);

// ---------------------------------------------------------------------------
// Synthetic perturbations in the entropic variable

/// A profile, its weight and the normalized entropic coordinate
/// xi = (y - y(+inf)) / (y(-inf) - y(+inf)) in [0, 1] at every node.
struct SyntheticSetup {
  SyntheticSetup(const ModelSpec& model, double eps, double lambda, const Grid& grid);
  ModelSpec model;
  ShockProfile profile;
  WeightFunction weight;
  std::vector<double> xi;
  double eps, lambda;
  /// Largest |w| keeping eta'(s) + w inside the image of the validity interval.
  double w_cap;
};

/// w as a function of xi: scale (sum_m c_m cos(m pi xi) + A exp(-((xi - xi0)/sigma)^2)).
struct WShape {
  std::vector<double> cos_coef;
  double spike_amp = 0.0, spike_center = 0.5, spike_width = 0.05;
  double scale = 1.0;
  double operator()(double xi) const;
};

std::vector<double> w_values(const SyntheticSetup& setup, const WShape& shape);
/// u = (eta')^{-1}(eta'(s) + w); nullopt when that leaves the validity interval.
std::optional<std::vector<double>> u_from_w(const SyntheticSetup& setup, std::span<const double> w);
/// \int w^2 dy on the setup grid.
double w_l2_dy(const SyntheticSetup& setup, std::span<const double> w);

enum class SignFamily { fourier, small_mode, spike };
const char* to_string(SignFamily family);

struct SignSearchOptions {
  double eps0 = 0.01;
  double C_bar = 1.0;         // hypothesis \int w^2 dy <= C_bar eps^3 / lambda^2
  double small_h = 0.0;       // sup bound of the small-perturbation family (0: eps / 2)
  std::size_t samples = 10000;
  int anneal_iterations = 10000;
  int modes = 20;
  std::uint64_t seed = 0;
};

struct SignSearchReport {
  double max_value = -std::numeric_limits<double>::infinity();  // max of R + eps0 D
  double max_sampled = -std::numeric_limits<double>::infinity();
  double max_annealed = -std::numeric_limits<double>::infinity();
  WShape argmax;
  std::string argmax_origin;
  /// |value(n) - value(2n)| at the maximizer: the quadrature tolerance.
  double quadrature_tolerance = 0.0;
  double value_scale = 0.0;  // max(Y^2/(2 eps^2), |B|, D) at the maximizer
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
};

/// R(u) + eps0 D(u) with R = -Y^2/(2 eps^2) + B - D at gamma = 0.
double sign_functional(FunctionalEvaluator& ev, std::span<const double> u, double eps, double eps0,
                       double* scale = nullptr);

SignSearchReport functional_sign_search(const SyntheticSetup& setup, const SignSearchOptions& options);

struct YBoundSearchOptions {
  std::size_t samples = 10000;
  int anneal_iterations = 10000;
  int modes = 20;
  std::uint64_t seed = 0;
  YBoundConstants constants = YBoundConstants::stated();
};

struct YBoundSearchReport {
  double worst_excess = -std::numeric_limits<double>::infinity();  // max (lhs - rhs)
  double worst_excess_sampled = -std::numeric_limits<double>::infinity();
  double worst_excess_annealed = -std::numeric_limits<double>::infinity();
  double worst_lhs = 0.0, worst_rhs = 0.0;
  WShape argmax;
  std::size_t violations = 0;  // sampled violations
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
};

YBoundSearchReport y_bound_search(const SyntheticSetup& setup, const YBoundSearchOptions& options);

// ---------------------------------------------------------------------------

struct ViolationRow {
  std::string suite;
  std::uint64_t seed;
  std::uint64_t index;
  std::string parameters;
  double value;
  bool hypothesis_ok;
};

/// CSV with header  suite,seed,index,parameters,value,hypothesis_ok.
std::string violations_csv(const std::vector<ViolationRow>& rows);

}  // namespace shocklab
