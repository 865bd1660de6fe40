// Recomputes the empirical constants of share/constants.txt and prints them
// as key = value lines.
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "shocklab/inequalities.hpp"
#include "shocklab/runner.hpp"

using namespace shocklab;

namespace {

struct SlackNeeds {
  double contraction = 0.0;
  double identity = 0.0;
};

// Smallest constants that the Burgers translation run needs.
SlackNeeds translation_needs(double shift, double cfl) {
  ExperimentConfig c;
  c.model = "burgers";
  c.eps = 0.05;
  c.L_dom = 800;
  c.n_cells = 512;
  c.T = 50.0 / (c.eps * c.eps);
  c.cfl = cfl;
  c.output_interval = c.T / 50.0;
  c.perturbation.kind = PerturbationKind::translation;
  c.perturbation.amplitude = shift;
  PreparedRun run = prepare_run(c);
  run.options.enforce_contraction = false;
  run.options.keep_trace = true;
  const EvolutionResult res = evolve_coupled(run.model, run.profile, run.weight, run.field0, run.options);
  const double dx = run.grid.dx();
  SlackNeeds needs;
  for (const StepTrace& st : res.trace) {
    if (st.scale <= 0.0) continue;
    const double dt = res.dt;
    const double excess = st.dE + run.options.eps0 * st.D_mean * dt;
    needs.contraction = std::max(needs.contraction, excess / ((dt * dt + dx * dx) * dt * st.scale));
    const double id = st.identity_error / st.scale - run.options.identity_relative;
    needs.identity = std::max(needs.identity, id / (dx * dx));
  }
  return needs;
}

}  // namespace

int main() {
  const GnSweepReport gn = gn_sweep(0, 20000, 2.0, 0.5);
  std::printf("# gn calibration: %zu samples, argmax %llu\n", gn.samples,
              static_cast<unsigned long long>(gn.argmax));
  std::printf("gn_ratio_bound_p2_q0.5 = %.17g\n", gn.max_ratio);

  SlackNeeds worst;
  for (double shift : {-20.0, 10.0, 40.0}) {
    for (double cfl : {1.0, 0.5}) {
      const SlackNeeds n = translation_needs(shift, cfl);
      std::printf("# translation %g cfl %g: contraction %.3e identity %.3e\n", shift, cfl, n.contraction,
                  n.identity);
      worst.contraction = std::max(worst.contraction, n.contraction);
      worst.identity = std::max(worst.identity, n.identity);
    }
  }
  std::printf("# needed: contraction %.3e identity %.3e\n", worst.contraction, worst.identity);
}
