#include "shocklab/runner.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "shocklab/format.hpp"
#include "shocklab/inequalities.hpp"
#include "shocklab/parallel.hpp"
#include "shocklab/solver.hpp"

namespace shocklab {

namespace fs = std::filesystem;
using nlohmann::json;

ModelSpec base_model(const ExperimentConfig& c) {
  if (!c.flux_coefficients.empty()) {
    return ModelSpec(c.model.empty() ? "custom" : c.model, PolyTrig::polynomial(c.flux_coefficients),
                     PolyTrig::polynomial(c.entropy_coefficients), c.radius);
  }
  try {
    return models::by_name(c.model);
  } catch (const ConfigError& e) {
    throw ConfigFieldError("model", e.what());
  }
}

double default_core_half_width(const ModelSpec& model, double eps) {
  return std::max(truncation_half_width(model, eps), 20.0 / eps);
}

PreparedRun prepare_run(const ExperimentConfig& c, const Constants& constants) {
  const ModelSpec base = base_model(c);
  const double s_minus = c.s_minus.value_or(c.eps);
  const double s_plus = c.s_plus.value_or(-c.eps);
  FluxNormalization norm = normalize_flux(base, s_minus, s_plus);
  const ModelSpec& model = norm.model;
  const double eps = norm.eps;
  const double nu = c.nu;
  const double L_core = c.L_dom ? 0.5 * *c.L_dom / nu : default_core_half_width(model, eps);
  validate_config(c, 2.0 * L_core * nu);
  Grid grid(L_core, c.n_cells);
  ShockProfile profile = solve_profile(model, eps, grid);
  const double lambda = c.lambda.value_or(default_lambda(eps));
  WeightFunction weight = build_weight(profile, model, lambda);

  PerturbationSpec p = c.perturbation;
  p.center /= nu;
  p.width /= nu;
  if (p.kind == PerturbationKind::translation) p.amplitude /= nu;
  Field field0 = initial_field(model, profile, p);

  EvolutionOptions opt;
  opt.T = c.T / nu;
  opt.dt = c.dt ? *c.dt / nu : 0.0;
  opt.cfl = c.cfl;
  opt.output_interval = c.output_interval / nu;
  opt.eps0 = c.eps0;
  opt.slack_constant = constants.get("contraction_slack_constant");
  opt.identity_constant = constants.get("energy_identity_constant");
  opt.identity_relative = constants.get_or("energy_identity_relative", 1e-3);
  opt.lipschitz_factor = constants.get_or("lipschitz_abort_factor", 10.0);
  return PreparedRun{c,     norm, model, eps, lambda, nu, L_core, grid, std::move(profile), std::move(weight),
                     field0, opt};
}

EvolutionResult evolve_physical(const PreparedRun& run) {
  EvolutionResult res = evolve_coupled(run.model, run.profile, run.weight, run.field0, run.options);
  const double nu = run.nu;
  if (nu != 1.0) {
    for (auto& r : res.records) {
      r.t *= nu;
      r.gamma *= nu;
      r.E *= nu;
      r.l2_distance *= nu;
      r.mass_deviation *= nu;
    }
    for (auto& s : res.trace) {
      s.t *= nu;
      s.dE *= nu;
    }
    res.final_field.t *= nu;
    res.shift.gamma *= nu;
    res.dt *= nu;
    res.initial_l2 *= nu;
    res.max_l2 *= nu;
  }
  return res;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string out = "t,gamma,gamma_dot,E,Y,B,D,l2_distance,mass_deviation\n";
  for (const auto& r : records) {
    const double v[] = {r.t, r.gamma, r.gamma_dot, r.E, r.Y, r.B, r.D, r.l2_distance, r.mass_deviation};
    for (int k = 0; k < 9; ++k) {
      if (k) out += ',';
      out += format_double(v[k]);
    }
    out += '\n';
  }
  return out;
}

std::string profile_csv(const ShockProfile& profile, const WeightFunction& weight, const ModelSpec& model,
                        double nu) {
  (void)model;
  std::string out = "x,s,y,a\n";
  const auto& s = profile.s_values();
  const auto& y = profile.y_of_x();
  const auto& a = weight.a_values();
  for (int i = 0; i < profile.grid().n_nodes(); ++i) {
    out += format_double(profile.grid().x(i) * nu) + ',' + format_double(s[i]) + ',' + format_double(y[i]) + ',' +
           format_double(a[i]) + '\n';
  }
  return out;
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

json manifest_base(Command command, const ExperimentConfig& c, const Constants& constants) {
  json m;
  m["code_version"] = SHOCKLAB_VERSION;
  m["command"] = to_string(command);
  m["config"] = config_to_json(c);
  json k = json::object();
  for (const auto& [key, v] : constants.values()) k[key] = v;
  m["constants"] = k;
  m["constants_file"] = constants.source();
  return m;
}

void add_resolved(json& m, const PreparedRun& run) {
  json r;
  r["eps"] = run.eps;
  r["lambda"] = run.lambda;
  r["nu"] = run.nu;
  r["L_dom"] = 2.0 * run.L_core * run.nu;
  r["L_core"] = run.L_core;
  r["n_cells"] = run.grid.n_cells();
  r["dx_core"] = run.grid.dx();
  r["Lambda"] = run.model.Lambda();
  r["normalization"] = {{"shift_a", run.normalization.shift_a},
                        {"tilt_b", run.normalization.tilt_b},
                        {"offset_c", run.normalization.offset_c}};
  r["T_core"] = run.options.T;
  r["cfl"] = run.options.cfl;
  r["output_interval_core"] = run.options.output_interval;
  r["eps0"] = run.options.eps0;
  r["slack_constant"] = run.options.slack_constant;
  r["identity_constant"] = run.options.identity_constant;
  r["identity_relative"] = run.options.identity_relative;
  r["lipschitz_factor"] = run.options.lipschitz_factor;
  m["resolved"] = r;
}

json evolution_summary(const EvolutionResult& res) {
  json s;
  s["status"] = to_string(res.status);
  s["message"] = res.message;
  s["steps"] = res.steps;
  s["dt"] = res.dt;
  s["max_abs_gamma_dot"] = res.max_abs_gamma_dot;
  s["lipschitz_bound"] = res.shift.lipschitz_bound;
  s["worst_slack"] = std::isfinite(res.worst_slack) ? json(res.worst_slack) : json(nullptr);
  s["worst_identity_ratio"] = res.worst_identity_ratio;
  s["initial_l2"] = res.initial_l2;
  s["max_l2"] = res.max_l2;
  if (!res.records.empty()) {
    s["final_gamma"] = res.records.back().gamma;
    s["final_E"] = res.records.back().E;
    s["E_ratio"] = res.records.front().E > 0.0 ? res.records.back().E / res.records.front().E : 0.0;
  }
  return s;
}

RunSummary run_profile(const ExperimentConfig& c, const fs::path& out, std::ostream& log, json& manifest) {
  const PreparedRun run = prepare_run(c);
  add_resolved(manifest, run);
  write_file(out / "profile.csv", profile_csv(run.profile, run.weight, run.model, run.nu));
  const auto tails = fit_tails(run.profile);
  RunSummary s;
  s.results = {{"tail_rate_left", tails.rate_left / run.nu}, {"tail_rate_right", tails.rate_right / run.nu}};
  log << "profile: " << run.grid.n_nodes() << " nodes written to " << (out / "profile.csv").string() << "\n";
  return s;
}

RunSummary run_evolve(const ExperimentConfig& c, const fs::path& out, std::ostream& log, json& manifest) {
  const PreparedRun run = prepare_run(c);
  add_resolved(manifest, run);
  write_file(out / "profile.csv", profile_csv(run.profile, run.weight, run.model, run.nu));
  const EvolutionResult res = evolve_physical(run);
  write_file(out / "diagnostics.csv", diagnostics_csv(res.records));
  RunSummary s;
  s.results = evolution_summary(res);
  manifest["resolved"]["dt_core"] = res.dt / run.nu;
  if (res.status != EvolutionStatus::ok) {
    s.exit_code = kExitAbort;
    s.message = std::string(to_string(res.status)) + ": " + res.message + " (diagnostics: " +
                (out / "diagnostics.csv").string() + ")";
  }
  log << "evolve: " << res.steps << " steps, status " << to_string(res.status) << ", max |gamma'| "
      << res.max_abs_gamma_dot << "\n";
  return s;
}

RunSummary run_verify(const ExperimentConfig& c, const fs::path& out, std::ostream& log, json& manifest) {
  const Constants& k = Constants::defaults();
  std::vector<ViolationRow> rows;
  json r;
  const std::uint64_t seed = c.seed();

  // Poincare
  std::vector<TestFunctionFamily> fams;
  for (FamilyKind kind : {FamilyKind::constant, FamilyKind::fourier, FamilyKind::bump, FamilyKind::piecewise})
    fams.push_back({kind, 1025, c.norm_cap, 10, derive_seed(seed, static_cast<std::uint64_t>(kind))});
  const std::size_t per = std::max<std::size_t>(1, c.samples / fams.size());
  const auto pr = poincare_sweep(fams, per, {c.delta});
  r["poincare"] = {{"samples", pr.samples},
                   {"delta", c.delta},
                   {"max_value", pr.max_value[0]},
                   {"positives", pr.positives[0]}};
  if (pr.positives[0] > 0)
    rows.push_back({"poincare", seed, pr.worst[0].index,
                    std::string("family=") + to_string(pr.worst[0].kind) + " delta=" + format_double(c.delta) +
                        " norm2=" + format_double(pr.worst[0].norm2),
                    pr.max_value[0], true});

  // Gagliardo-Nirenberg
  const auto gr = gn_sweep(seed, c.samples, c.gn_p, c.gn_q);
  std::ostringstream key;
  key << "gn_ratio_bound_p" << format_double(c.gn_p) << "_q" << format_double(c.gn_q);
  r["gagliardo_nirenberg"] = {{"samples", gr.samples}, {"skipped", gr.skipped}, {"max_ratio", gr.max_ratio},
                              {"frozen_key", key.str()}};
  if (k.contains(key.str())) {
    const double bound = k.get(key.str());
    r["gagliardo_nirenberg"]["frozen_bound"] = bound;
    if (gr.max_ratio > bound)
      rows.push_back({"gagliardo_nirenberg", seed, gr.argmax,
                      "p=" + format_double(c.gn_p) + " q=" + format_double(c.gn_q), gr.max_ratio, true});
  }

  // Synthetic functional searches on the configured model
  const ModelSpec model = normalize_flux(base_model(c), c.s_minus.value_or(c.eps), c.s_plus.value_or(-c.eps)).model;
  const double eps = c.s_minus ? 0.5 * (*c.s_minus - *c.s_plus) : c.eps;
  const double lambda = c.lambda.value_or(default_lambda(eps));
  const double L = c.L_dom ? 0.5 * *c.L_dom / c.nu : default_core_half_width(model, eps);
  SyntheticSetup setup(model, eps, lambda, Grid(L, c.n_cells));

  YBoundSearchOptions yo;
  yo.samples = c.samples;
  yo.anneal_iterations = c.anneal_iterations;
  yo.seed = seed;
  const auto yr = y_bound_search(setup, yo);
  r["y_bound"] = {{"constants", {2.0, 8.0}},
                  {"worst_excess", yr.worst_excess},
                  {"worst_excess_sampled", yr.worst_excess_sampled},
                  {"worst_excess_annealed", yr.worst_excess_annealed},
                  {"sampled_violations", yr.violations},
                  {"worst_lhs", yr.worst_lhs},
                  {"worst_rhs", yr.worst_rhs}};
  if (yr.worst_excess > 0.0)
    rows.push_back({"y_bound_stated", seed, 0, "c_y=2 c_const=8", yr.worst_excess, true});
  yo.constants = YBoundConstants::with_half_factor();
  const auto yr2 = y_bound_search(setup, yo);
  r["y_bound_half_factor"] = {{"constants", {4.0, 32.0}},
                              {"worst_excess", yr2.worst_excess},
                              {"sampled_violations", yr2.violations}};
  if (yr2.worst_excess > 0.0)
    rows.push_back({"y_bound_half_factor", seed, 0, "c_y=4 c_const=32", yr2.worst_excess, true});

  SignSearchOptions so;
  so.eps0 = c.eps0;
  so.C_bar = c.C_bar;
  so.samples = c.samples;
  so.anneal_iterations = c.anneal_iterations;
  so.seed = seed;
  const auto sr = functional_sign_search(setup, so);
  r["sign_search"] = {{"max_value", sr.max_value},
                      {"max_sampled", sr.max_sampled},
                      {"max_annealed", sr.max_annealed},
                      {"quadrature_tolerance", sr.quadrature_tolerance},
                      {"argmax", sr.argmax_origin},
                      {"evaluated", sr.evaluated},
                      {"skipped", sr.skipped}};
  if (sr.max_value > sr.quadrature_tolerance)
    rows.push_back({"sign_search", seed, 0, sr.argmax_origin, sr.max_value, true});

  write_file(out / "violations.csv", violations_csv(rows));
  manifest["resolved"] = {{"eps", eps}, {"lambda", lambda}, {"L_core", L}, {"Lambda", model.Lambda()}};
  RunSummary s;
  s.results = r;
  log << "verify-lemmas: " << rows.size() << " violation rows written to " << (out / "violations.csv").string()
      << "\n";
  return s;
}

RunSummary run_sweep(const ExperimentConfig& c, const fs::path& out, std::ostream& log, json&) {
  // Cross product in the (sorted) order of the grid keys.
  std::vector<std::pair<std::string, std::vector<json>>> axes(c.grid.begin(), c.grid.end());
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.second.size();
  std::vector<ExperimentConfig> configs(total);
  std::vector<json> overrides(total);
  for (std::size_t i = 0; i < total; ++i) {
    ExperimentConfig ci = c;
    ci.grid.clear();
    std::size_t rem = i;
    json o = json::object();
    for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
      const auto& v = it->second[rem % it->second.size()];
      rem /= it->second.size();
      ci = with_override(ci, it->first, v);
      o[it->first] = v;
    }
    configs[i] = ci;
    overrides[i] = o;
  }
  std::vector<std::string> rows(total);
  std::vector<int> codes(total, kExitOk);
  parallel_for(total, [&](std::size_t i) {
    char name[32];
    std::snprintf(name, sizeof name, "run_%03zu", i);
    const fs::path dir = out / name;
    std::ostringstream sink;
    const RunSummary s = run_command(Command::evolve, configs[i], dir, sink);
    codes[i] = s.exit_code;
    std::string row = std::to_string(i);
    for (const auto& a : axes) row += ',' + overrides[i][a.first].dump();
    const json& res = s.results;
    auto num = [&](const char* key) {
      return res.contains(key) && res[key].is_number() ? format_double(res[key].get<double>()) : std::string();
    };
    const std::string status = res.contains("status") ? res["status"].get<std::string>() : "config_error";
    row += ',' + status + ',' + num("E_ratio") + ',' + num("max_abs_gamma_dot") + ',' + num("worst_slack") + ',' +
           (status == "ok" ? "1" : "0");
    rows[i] = row;
  });
  std::string csv = "run";
  for (const auto& a : axes) csv += ',' + a.first;
  csv += ",status,E_ratio,max_abs_gamma_dot,worst_slack,contraction_pass\n";
  for (const auto& r : rows) csv += r + '\n';
  write_file(out / "sweep.csv", csv);
  RunSummary s;
  std::size_t failed = 0;
  for (int code : codes) failed += code != kExitOk;
  s.results = {{"runs", total}, {"failed", failed}};
  log << "sweep: " << total << " runs, " << failed << " failed\n";
  return s;
}

}  // namespace

RunSummary run_command(Command command, const ExperimentConfig& config, const fs::path& out_dir, std::ostream& log) {
  RunSummary s;
  json manifest;
  try {
    fs::create_directories(out_dir);
    manifest = manifest_base(command, config, Constants::defaults());
    switch (command) {
      case Command::profile: s = run_profile(config, out_dir, log, manifest); break;
      case Command::evolve: s = run_evolve(config, out_dir, log, manifest); break;
      case Command::verify_lemmas: s = run_verify(config, out_dir, log, manifest); break;
      case Command::sweep: s = run_sweep(config, out_dir, log, manifest); break;
    }
  } catch (const ConfigError& e) {
    s.exit_code = kExitConfig;
    s.message = std::string("configuration error: ") + e.what();
  } catch (const PreconditionError& e) {
    s.exit_code = kExitConfig;
    s.message = std::string("invalid parameters: ") + e.what();
  } catch (const DegenerateInputError& e) {
    s.exit_code = kExitConfig;
    s.message = std::string("invalid parameters: ") + e.what();
  } catch (const DomainError& e) {
    s.exit_code = kExitConfig;
    s.message = std::string("invalid parameters: ") + e.what();
  } catch (const RadiusViolation& e) {
    s.exit_code = kExitAbort;
    s.message = std::string("radius_violation: ") + e.what();
  } catch (const Error& e) {
    s.exit_code = kExitAbort;
    s.message = std::string("run aborted: ") + e.what();
  }
  manifest["exit_code"] = s.exit_code;
  manifest["message"] = s.message;
  manifest["results"] = s.results;
  try {
    fs::create_directories(out_dir);
    write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    log << "warning: " << e.what() << "\n";
  }
  if (!s.message.empty()) log << s.message << "\n";
  return s;
}

}  // namespace shocklab
