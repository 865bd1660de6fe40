// Acceptance run: one PASS/FAIL line per criterion, detail lines indented.
//
//   acceptance [--expect-fail N]...
//
// The exit status is 0 when every criterion matches its expectation (PASS,
// or FAIL for the numbers given with --expect-fail).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "shocklab/functionals.hpp"
#include "shocklab/inequalities.hpp"
#include "shocklab/parallel.hpp"
#include "shocklab/profile.hpp"
#include "shocklab/runner.hpp"
#include "shocklab/solver.hpp"

using namespace shocklab;

namespace {

const char* const kModels[] = {"burgers", "sine_flux", "quartic_entropy"};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class... Args>
void info(const char* fmt, Args... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
  std::fflush(stdout);
}

ModelSpec normalized(const std::string& name, double eps) { return normalize_flux(models::by_name(name), eps, -eps).model; }

// ---------------------------------------------------------------------------

bool profile_oracle() {
  bool ok = true;
  const ModelSpec m = models::burgers();
  for (double eps : {0.02, 0.1}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid grid(truncation_half_width(m, eps), 2048);
    const ShockProfile p = solve_profile(m, eps, grid);
    const double elapsed = seconds_since(t0);
    double err = 0.0;
    for (int i = 0; i < grid.n_nodes(); ++i)
      err = std::max(err, std::abs(p.s_values()[i] + eps * std::tanh(0.5 * eps * grid.x(i))));
    info("eps %g: sup error %.3e (limit 1e-8), %.4f s (limit 1 s)", eps, err, elapsed);
    ok = ok && err <= 1e-8 && elapsed < 1.0;
  }
  return ok;
}

bool steady_shock() {
  const double eps = 0.05;
  const ModelSpec m = models::burgers();
  const Grid grid(truncation_half_width(m, eps), 2048);
  const ShockProfile p = solve_profile(m, eps, grid);
  Solver solver(m, grid);
  Field f{p.s_values(), 0.0};
  const double T = 10.0 / (eps * eps);
  const auto steps = static_cast<long>(std::ceil(T / stable_dt(m, grid, -eps, eps)));
  const double dt = T / static_cast<double>(steps);
  for (long k = 0; k < steps; ++k) solver.step(f, dt);
  double drift = 0.0;
  for (int i = 0; i < grid.n_nodes(); ++i) drift = std::max(drift, std::abs(f.u[i] - p.s_values()[i]));
  info("burgers eps %g, n_cells 2048, t = %g, %ld steps: sup drift %.3e (limit 1e-6)", eps, T, steps, drift);
  return drift <= 1e-6;
}

PerturbationSpec random_perturbation(std::mt19937_64& rng, double reach) {
  PerturbationSpec p;
  const double r = uniform01(rng);
  if (r < 0.4) {
    p.kind = PerturbationKind::gaussian;
    p.amplitude = uniform(rng, -0.5, 0.5);
    p.width = uniform(rng, 1.0, 20.0);
    p.center = uniform(rng, -reach, reach);
  } else if (r < 0.8) {
    p.kind = PerturbationKind::fourier;
    p.amplitude = uniform(rng, 0.01, 0.5);
    p.width = uniform(rng, 5.0, 40.0);
    p.center = uniform(rng, -reach, reach);
    p.modes = 8;
    p.seed = rng();
  } else {
    p.kind = PerturbationKind::translation;
    p.amplitude = uniform(rng, -reach, reach);
  }
  return p;
}

bool coordinate_equivalence() {
  bool ok = true;
  for (const char* name : kModels) {
    ExperimentConfig c;
    c.model = name;
    c.eps = 0.05;
    c.n_cells = 4096;
    const PreparedRun base = prepare_run(c);
    FunctionalEvaluator ev(base.model, base.profile, base.weight);
    std::mt19937_64 rng(derive_seed(3, std::hash<std::string>{}(name) & 0xffff));
    double worst[3] = {0, 0, 0};
    int evaluated = 0;
    while (evaluated < 100) {
      const PerturbationSpec p = random_perturbation(rng, 100.0);
      Field u0;
      try {
        u0 = initial_field(base.model, base.profile, p);
      } catch (const RadiusViolation&) {
        continue;
      }
      const double gamma = uniform(rng, -20.0, 20.0);
      const FunctionalReport x = ev.x_space(u0.u, gamma);
      const FunctionalReport y = ev.y_space(u0.u, gamma);
      const double xs[3] = {x.Y, x.B, x.D}, ys[3] = {y.Y, y.B, y.D};
      for (int k = 0; k < 3; ++k) {
        const double scale = std::max({std::abs(xs[k]), std::abs(ys[k]), 1e-300});
        worst[k] = std::max(worst[k], std::abs(xs[k] - ys[k]) / scale);
      }
      ++evaluated;
    }
    info("%s: 100 perturbations, worst relative difference Y %.2e B %.2e D %.2e (limit 1e-6)", name, worst[0],
         worst[1], worst[2]);
    ok = ok && worst[0] <= 1e-6 && worst[1] <= 1e-6 && worst[2] <= 1e-6;
  }
  return ok;
}

bool energy_identity() {
  bool ok = true;
  std::mt19937_64 rng(44);
  for (int k = 0; k < 10; ++k) {
    ExperimentConfig c;
    c.model = kModels[k % 3];
    c.eps = k < 5 ? 0.05 : 0.1;
    c.L_dom = 800;
    c.n_cells = 512;
    c.T = 5.0 / (c.eps * c.eps);
    c.cfl = 1.0;
    c.output_interval = c.T / 10.0;
    c.perturbation = random_perturbation(rng, 60.0);
    c.perturbation.width = std::min(c.perturbation.width, 10.0);
    PreparedRun run = prepare_run(c);
    run.options.enforce_contraction = false;
    const EvolutionResult r = evolve_physical(run);
    const bool pass = r.status == EvolutionStatus::ok && r.worst_identity_ratio <= 1.0;
    info("run %d %s eps %g %s: %lld steps, worst |dE/dt - R| / tolerance = %.3f%s", k, c.model.c_str(), c.eps,
         to_string(c.perturbation.kind), static_cast<long long>(r.steps), r.worst_identity_ratio,
         r.status == EvolutionStatus::ok ? "" : " (aborted)");
    ok = ok && pass;
  }
  return ok;
}

// ---------------------------------------------------------------------------
// Criteria 5, 6 and the evolved snapshots of criterion 9 share the runs.

struct ContractionRun {
  std::string model;
  PerturbationSpec perturbation;
  EvolutionResult result;
  double Lambda = 0.0;
  double max_gd_half = 0.0;
  bool half_ok = false;
  double eps = 0.0, lambda = 0.0;
};

PerturbationSpec contraction_perturbation(std::uint64_t seed, int k) {
  std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
  PerturbationSpec p;
  if (k < 6) {
    p.kind = PerturbationKind::gaussian;
    p.amplitude = k % 2 == 0 ? 0.5 : -0.5;
    p.width = uniform(rng, 2.0, 6.0);
    p.center = uniform(rng, -60.0, 60.0);
  } else if (k < 12) {
    p.kind = PerturbationKind::gaussian;
    p.amplitude = uniform(rng, -0.3, 0.3);
    p.width = uniform(rng, 1.0, 10.0);
    p.center = uniform(rng, -100.0, 100.0);
  } else if (k < 17) {
    p.kind = PerturbationKind::fourier;
    p.amplitude = uniform(rng, 0.05, 0.5);
    p.width = uniform(rng, 5.0, 30.0);
    p.center = uniform(rng, -50.0, 50.0);
    p.modes = 8;
    p.seed = rng();
  } else {
    p.kind = PerturbationKind::translation;
    p.amplitude = uniform(rng, -50.0, 50.0);
  }
  return p;
}

ExperimentConfig contraction_config(const std::string& model, const PerturbationSpec& p) {
  ExperimentConfig c;
  c.model = model;
  c.eps = 0.05;
  c.eps0 = 0.01;
  c.L_dom = 800;
  c.n_cells = 512;
  c.T = 50.0 / (c.eps * c.eps);
  c.cfl = 1.0;
  c.output_interval = c.T / 200.0;
  c.perturbation = p;
  return c;
}

std::vector<ContractionRun> g_runs;
std::map<std::string, double> g_model_seconds;

void run_contraction_suite() {
  for (const char* name : kModels) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < 20; ++k) {
      ContractionRun cr;
      cr.model = name;
      cr.perturbation = contraction_perturbation(5, k);
      const PreparedRun run = prepare_run(contraction_config(name, cr.perturbation));
      cr.Lambda = run.model.Lambda();
      cr.eps = run.eps;
      cr.lambda = run.lambda;
      cr.result = evolve_physical(run);
      g_runs.push_back(std::move(cr));
    }
    g_model_seconds[name] = seconds_since(t0);
  }
}

bool contraction() {
  run_contraction_suite();
  bool ok = true;
  for (const char* name : kModels) {
    int passed = 0;
    double worst = -std::numeric_limits<double>::infinity(), decay = 0.0;
    for (const auto& r : g_runs) {
      if (r.model != name) continue;
      const auto& res = r.result;
      if (res.status == EvolutionStatus::ok) ++passed;
      else info("%s %s amplitude %g: %s: %s", name, to_string(r.perturbation.kind), r.perturbation.amplitude,
                to_string(res.status), res.message.c_str());
      worst = std::max(worst, res.worst_slack);
      if (!res.records.empty() && res.records.front().E > 0.0)
        decay = std::max(decay, res.records.back().E / res.records.front().E);
    }
    const double secs = g_model_seconds[name];
    info("%s: %d/20 runs nonincreasing within the per-step slack, worst excess %.3e, largest E(T)/E(0) %.3e, "
         "%.0f s (limit 600 s)",
         name, passed, worst, decay, secs);
    ok = ok && passed == 20 && secs <= 600.0;
  }
  return ok;
}

bool l2_stability() {
  bool ok = true;
  for (const char* name : kModels) {
    int l2_pass = 0, gd_pass = 0;
    double worst_l2 = 0.0, worst_change = 0.0;
    for (auto& r : g_runs) {
      if (r.model != name) continue;
      const auto& res = r.result;
      const double bound = 4.0 * r.Lambda * r.Lambda * res.initial_l2;
      worst_l2 = std::max(worst_l2, res.max_l2 / bound);
      if (res.max_l2 <= bound) ++l2_pass;

      PreparedRun half = prepare_run(contraction_config(name, r.perturbation));
      half.options.dt = 0.5 * res.dt;
      const EvolutionResult hr = evolve_physical(half);
      r.max_gd_half = hr.max_abs_gamma_dot;
      const double change = std::abs(hr.max_abs_gamma_dot - res.max_abs_gamma_dot) / res.max_abs_gamma_dot;
      worst_change = std::max(worst_change, change);
      r.half_ok = hr.status == EvolutionStatus::ok && std::isfinite(res.max_abs_gamma_dot) && change <= 0.1;
      if (r.half_ok) ++gd_pass;
    }
    info("%s: L2 bound held in %d/20 runs (largest ratio to 4 Lambda^2 |u0 - s|^2: %.3f); max|gamma'| stable "
         "under dt halving in %d/20 runs (largest change %.2f%%)",
         name, l2_pass, worst_l2, gd_pass, 100.0 * worst_change);
    ok = ok && l2_pass == 20 && gd_pass == 20;
  }
  return ok;
}

// ---------------------------------------------------------------------------

bool poincare_suite() {
  std::vector<TestFunctionFamily> fams;
  for (FamilyKind kind : {FamilyKind::constant, FamilyKind::fourier, FamilyKind::bump})
    fams.push_back({kind, 1025, 4.0, 10, derive_seed(7, static_cast<std::uint64_t>(kind))});
  const PoincareSweepReport r = poincare_sweep(fams, 3334, {0.01});
  info("%zu samples, delta 0.01: max value %.4e, %zu positive", r.samples, r.max_value[0], r.positives[0]);

  // Resolution check at the maximizer.
  const auto& w = r.worst[0];
  TestFunctionFamily fine = fams[static_cast<std::size_t>(w.kind)];
  const double coarse_v = poincare_functional(fams[static_cast<std::size_t>(w.kind)].sample(w.index), 0.01);
  fine.n_points = 2049;
  const double fine_v = poincare_functional(fine.sample(w.index), 0.01);
  const double change = std::abs(fine_v - coarse_v) / std::abs(coarse_v);
  info("maximizer (%s #%llu) at 1025 / 2049 points: %.6e / %.6e, change %.3f%% (limit 1%%)", to_string(w.kind),
       static_cast<unsigned long long>(w.index), coarse_v, fine_v, 100.0 * change);

  // Control: delta far above any admissible delta_0, W a large constant.
  std::vector<double> big(1025, 2.0);
  const double control = poincare_functional(big, 10.0, 4.0);
  const PoincareSweepReport rc = poincare_sweep({fams[0]}, 1000, {10.0});
  info("control delta 10: W = 2 gives %.4f; constants family gives %zu positive of %zu", control, rc.positives[0],
       rc.samples);
  return r.positives[0] == 0 && change <= 0.01 && control > 0.0 && rc.positives[0] > 0;
}

bool gn_suite() {
  const Constants& k = Constants::defaults();
  const double frozen = k.get("gn_ratio_bound_p2_q0.5");
  const GnSweepReport r = gn_sweep(0, 10000, 2.0, 0.5);
  info("calibration family (seed 0, %zu samples, %zu skipped): max ratio %.10g, frozen %.10g", r.samples, r.skipped,
       r.max_ratio, frozen);
  const GnSweepReport held = gn_sweep(1, 10000, 2.0, 0.5);
  info("held-out seed 1 (informational): max ratio %.10g (%.2f x frozen)", held.max_ratio, held.max_ratio / frozen);

  double worst = 0.0;
  for (std::uint64_t i = 0; i < 30; ++i) {
    const GnSample s = gn_family_sample(0, i);
    const GnResult base = gn_check(s.w, s.L, s.h, 2.0, 0.5);
    if (base.lhs == 0.0) continue;
    for (double alpha : {0.5, 2.0}) {
      std::vector<double> w = s.w;
      for (double& v : w) v *= alpha;
      const GnResult scaled = gn_check(w, s.L, alpha * s.h, 2.0, 0.5);
      worst = std::max(worst, std::abs(scaled.ratio - base.ratio) / base.ratio);
    }
  }
  info("scaling w -> alpha w, h -> alpha h (alpha 0.5, 2; 30 samples): worst relative change %.2e (limit 1e-10)",
       worst);
  return r.max_ratio <= frozen && worst <= 1e-10;
}

bool y_bound_suite(bool* corrected_pass) {
  bool snap_ok = true;
  std::size_t snapshots = 0, snap_violations = 0;
  double snap_worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : g_runs) {
    for (const auto& d : r.result.records) {
      FunctionalReport rep;
      rep.Y = d.Y;
      rep.w_l2sq = d.w_l2sq;
      const YBoundResult y = y_bounds_l2_check(rep, r.eps, r.lambda, r.Lambda, YBoundConstants::stated());
      ++snapshots;
      snap_worst = std::max(snap_worst, -y.margin / y.rhs);
      if (!y.pass) {
        ++snap_violations;
        snap_ok = false;
      }
    }
  }
  info("evolution snapshots: %zu checked, %zu violations, worst (lhs - rhs) / rhs %.3f", snapshots, snap_violations,
       snap_worst);

  bool synth_ok = true;
  *corrected_pass = true;
  for (const char* name : kModels) {
    const double eps = 0.05;
    const SyntheticSetup setup(normalized(name, eps), eps, default_lambda(eps), Grid(400.0, 1024));
    YBoundSearchOptions o;
    o.seed = 9;
    const YBoundSearchReport st = y_bound_search(setup, o);
    o.constants = YBoundConstants::with_half_factor();
    const YBoundSearchReport hf = y_bound_search(setup, o);
    info("%s, constants (2, 8): %zu/%zu samples violate, worst lhs %.4g vs rhs %.4g, annealed excess %.3e", name,
         st.violations, st.evaluated, st.worst_lhs, st.worst_rhs, st.worst_excess_annealed);
    info("%s, constants (4, 32) (informational): %zu violations, worst excess %.3e", name, hf.violations,
         hf.worst_excess);
    synth_ok = synth_ok && st.violations == 0 && st.worst_excess <= 0.0;
    *corrected_pass = *corrected_pass && hf.violations == 0 && hf.worst_excess <= 0.0;
  }
  return snap_ok && synth_ok;
}

bool sign_suite() {
  bool ok = true;
  for (const char* name : kModels) {
    const double eps = 0.05;
    const SyntheticSetup setup(normalized(name, eps), eps, default_lambda(eps), Grid(400.0, 1024));
    SignSearchOptions o;
    o.eps0 = 0.01;
    o.seed = 10;
    const SignSearchReport r = functional_sign_search(setup, o);
    info("%s: %zu evaluated, %zu skipped; max R + eps0 D = %.4e (sampled %.4e, annealed %.4e), quadrature "
         "tolerance %.3e, at %s",
         name, r.evaluated, r.skipped, r.max_value, r.max_sampled, r.max_annealed, r.quadrature_tolerance,
         r.argmax_origin.c_str());
    ok = ok && r.max_value <= r.quadrature_tolerance;
  }
  // Control with the smallness hypothesis relaxed.
  const double eps = 0.05;
  const SyntheticSetup setup(normalized("burgers", eps), eps, default_lambda(eps), Grid(400.0, 1024));
  SignSearchOptions relaxed;
  relaxed.C_bar = 1e4;
  relaxed.samples = 2000;
  relaxed.anneal_iterations = 2000;
  relaxed.seed = 11;
  const SignSearchReport rc = functional_sign_search(setup, relaxed);
  info("control with C_bar = 1e4 (informational): max R + eps0 D = %.4e", rc.max_value);
  return ok;
}

bool nu_invariance() {
  auto config = [](double nu) {
    ExperimentConfig c;
    c.model = "sine_flux";
    c.eps = 0.05;
    c.nu = nu;
    c.L_dom = 800 * nu;
    c.n_cells = 512;
    c.T = 2000 * nu;
    c.cfl = 1.0;
    c.output_interval = 50 * nu;
    c.perturbation.kind = PerturbationKind::gaussian;
    c.perturbation.amplitude = 0.3;
    c.perturbation.width = 5 * nu;
    c.perturbation.center = 20 * nu;
    return c;
  };
  const EvolutionResult a = evolve_physical(prepare_run(config(1.0)));
  const EvolutionResult b = evolve_physical(prepare_run(config(4.0)));
  bool same = a.status == EvolutionStatus::ok && b.status == EvolutionStatus::ok &&
              a.records.size() == b.records.size();
  std::size_t mismatches = 0;
  for (std::size_t i = 0; same && i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    const bool eq = y.t == 4.0 * x.t && y.gamma == 4.0 * x.gamma && y.gamma_dot == x.gamma_dot &&
                    y.E == 4.0 * x.E && y.Y == x.Y && y.B == x.B && y.D == x.D &&
                    y.l2_distance == 4.0 * x.l2_distance && y.mass_deviation == 4.0 * x.mass_deviation;
    if (!eq) ++mismatches;
  }
  same = same && mismatches == 0;
  info("sine_flux, nu 1 vs nu 4: %zu records, %zu differ after un-mapping", a.records.size(), mismatches);
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_fail;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      expect_fail.insert(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail N]...\n", argv[0]);
      return 2;
    }
  }

  bool matches = true;
  auto report = [&](int id, const char* title, const std::function<bool()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    try {
      pass = fn();
    } catch (const std::exception& e) {
      info("error: %s", e.what());
    }
    const bool expected = expect_fail.count(id) == 0;
    std::printf("%s  %2d %s (%.1f s)%s\n", pass ? "PASS" : "FAIL", id, title, seconds_since(t0),
                pass == expected ? "" : (pass ? "  [unexpected pass]" : ""));
    std::fflush(stdout);
    if (pass != expected) matches = false;
  };

  bool corrected = false;
  report(1, "profile oracle", profile_oracle);
  report(2, "steady-shock preservation", steady_shock);
  report(3, "coordinate-change equivalence", coordinate_equivalence);
  report(4, "energy-identity consistency", energy_identity);
  report(5, "contraction", contraction);
  report(6, "L2 stability", l2_stability);
  report(7, "Poincare lemma suite", poincare_suite);
  report(8, "Gagliardo-Nirenberg suite", gn_suite);
  report(9, "Y bounds L2 with constants (2, 8)", [&] { return y_bound_suite(&corrected); });
  info("constants (4, 32): %s", corrected ? "no violation" : "violated");
  report(10, "functional sign search", sign_suite);
  report(11, "nu invariance", nu_invariance);
  return matches ? 0 : 1;
}
