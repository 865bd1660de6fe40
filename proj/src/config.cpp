#include "shocklab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace shocklab {

using nlohmann::json;

namespace {

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigFieldError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigFieldError(field, "expected a finite number");
  return d;
}

double positive(const json& v, const std::string& field) {
  const double d = number(v, field);
  if (!(d > 0.0)) throw ConfigFieldError(field, "must be positive");
  return d;
}

int integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigFieldError(field, "expected an integer");
  return v.get<int>();
}

std::uint64_t unsigned64(const json& v, const std::string& field) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw ConfigFieldError(field, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigFieldError(field, "expected a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigFieldError(field, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, field));
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const json&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"command", [](auto& c, const json& v) { c.command = command_from_string(string(v, "command")); }},
      {"model", [](auto& c, const json& v) { c.model = string(v, "model"); }},
      {"flux_coefficients", [](auto& c, const json& v) { c.flux_coefficients = numbers(v, "flux_coefficients"); }},
      {"entropy_coefficients",
       [](auto& c, const json& v) { c.entropy_coefficients = numbers(v, "entropy_coefficients"); }},
      {"radius", [](auto& c, const json& v) { c.radius = positive(v, "radius"); }},
      {"s_minus", [](auto& c, const json& v) { c.s_minus = number(v, "s_minus"); }},
      {"s_plus", [](auto& c, const json& v) { c.s_plus = number(v, "s_plus"); }},
      {"eps", [](auto& c, const json& v) { c.eps = positive(v, "eps"); }},
      {"nu", [](auto& c, const json& v) { c.nu = positive(v, "nu"); }},
      {"lambda",
       [](auto& c, const json& v) {
         const double l = number(v, "lambda");
         if (l < 0.0) throw ConfigFieldError("lambda", "must be nonnegative");
         c.lambda = l;
       }},
      {"eps0",
       [](auto& c, const json& v) {
         c.eps0 = positive(v, "eps0");
         if (c.eps0 >= 1.0) throw ConfigFieldError("eps0", "must be below 1");
       }},
      {"L_dom", [](auto& c, const json& v) { c.L_dom = positive(v, "L_dom"); }},
      {"n_cells", [](auto& c, const json& v) { c.n_cells = integer(v, "n_cells"); }},
      {"T", [](auto& c, const json& v) { c.T = positive(v, "T"); }},
      {"cfl", [](auto& c, const json& v) { c.cfl = positive(v, "cfl"); }},
      {"dt", [](auto& c, const json& v) { c.dt = positive(v, "dt"); }},
      {"output_interval",
       [](auto& c, const json& v) {
         c.output_interval = number(v, "output_interval");
         if (c.output_interval < 0.0) throw ConfigFieldError("output_interval", "must be nonnegative");
       }},
      {"perturbation",
       [](auto& c, const json& v) {
         try {
           c.perturbation.kind = perturbation_kind_from_string(string(v, "perturbation"));
         } catch (const ConfigFieldError&) {
           throw;
         } catch (const ConfigError& e) {
           throw ConfigFieldError("perturbation", e.what());
         }
       }},
      {"amplitude", [](auto& c, const json& v) { c.perturbation.amplitude = number(v, "amplitude"); }},
      {"width", [](auto& c, const json& v) { c.perturbation.width = positive(v, "width"); }},
      {"center", [](auto& c, const json& v) { c.perturbation.center = number(v, "center"); }},
      {"seed", [](auto& c, const json& v) { c.perturbation.seed = unsigned64(v, "seed"); }},
      {"modes", [](auto& c, const json& v) { c.perturbation.modes = integer(v, "modes"); }},
      {"perturbation_samples",
       [](auto& c, const json& v) { c.perturbation.samples = numbers(v, "perturbation_samples"); }},
      {"samples", [](auto& c, const json& v) { c.samples = unsigned64(v, "samples"); }},
      {"anneal_iterations", [](auto& c, const json& v) { c.anneal_iterations = integer(v, "anneal_iterations"); }},
      {"delta", [](auto& c, const json& v) { c.delta = positive(v, "delta"); }},
      {"norm_cap", [](auto& c, const json& v) { c.norm_cap = positive(v, "norm_cap"); }},
      {"C_bar", [](auto& c, const json& v) { c.C_bar = positive(v, "C_bar"); }},
      {"gn_p", [](auto& c, const json& v) { c.gn_p = positive(v, "gn_p"); }},
      {"gn_q", [](auto& c, const json& v) { c.gn_q = positive(v, "gn_q"); }},
      {"grid",
       [](auto& c, const json& v) {
         if (!v.is_object()) throw ConfigFieldError("grid", "expected an object of value lists");
         c.grid.clear();
         for (const auto& [k, list] : v.items()) {
           if (!list.is_array() || list.empty())
             throw ConfigFieldError("grid." + k, "expected a nonempty array");
           c.grid[k] = std::vector<json>(list.begin(), list.end());
         }
       }},
  };
  return table;
}

const std::vector<std::string>& sweepable() {
  static const std::vector<std::string> keys = {"eps", "eps0", "seed", "amplitude", "width",
                                                "center", "lambda", "model", "nu", "n_cells"};
  return keys;
}

}  // namespace

Command command_from_string(const std::string& name) {
  if (name == "profile") return Command::profile;
  if (name == "evolve") return Command::evolve;
  if (name == "verify-lemmas") return Command::verify_lemmas;
  if (name == "sweep") return Command::sweep;
  throw ConfigFieldError("command", "unknown command '" + name + "'");
}

const char* to_string(Command command) {
  switch (command) {
    case Command::profile: return "profile";
    case Command::evolve: return "evolve";
    case Command::verify_lemmas: return "verify-lemmas";
    case Command::sweep: return "sweep";
  }
  return "?";
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << col;
    throw ConfigFieldError(os.str(), "JSON syntax error");
  }
  if (!doc.is_object()) throw ConfigFieldError("<root>", "expected a JSON object");
  ExperimentConfig c;
  for (const auto& [key, value] : doc.items()) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigFieldError(key, "unknown field");
    it->second(c, value);
  }
  for (const auto& [k, _] : c.grid)
    if (std::find(sweepable().begin(), sweepable().end(), k) == sweepable().end())
      throw ConfigFieldError("grid." + k, "field cannot be swept");
  if (c.flux_coefficients.empty() != c.entropy_coefficients.empty())
    throw ConfigFieldError("flux_coefficients", "flux and entropy coefficients must be given together");
  if (c.s_minus.has_value() != c.s_plus.has_value())
    throw ConfigFieldError("s_minus", "s_minus and s_plus must be given together");
  if (c.s_minus && !(*c.s_minus > *c.s_plus)) throw ConfigFieldError("s_minus", "must exceed s_plus");
  if (c.n_cells < 64) throw ConfigFieldError("n_cells", "must be at least 64");
  if (c.n_cells % 2 != 0) throw ConfigFieldError("n_cells", "must be even so that x = 0 is a node");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigFieldError("--config", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const ExperimentConfig& c, double L_dom) {
  const auto& p = c.perturbation;
  if (p.kind == PerturbationKind::gaussian || p.kind == PerturbationKind::fourier) {
    // The Gaussian factor is below 1e-16 of its peak beyond 6 widths.
    const double reach = std::abs(p.center) + 6.0 * p.width;
    if (reach > 0.5 * L_dom) {
      std::ostringstream os;
      os << "perturbation support |center| + 6 width = " << reach << " reaches outside (-L_dom/2, L_dom/2) = +-"
         << 0.5 * L_dom;
      throw ConfigFieldError("width", os.str());
    }
  }
  if (p.kind == PerturbationKind::translation && std::abs(p.amplitude) > 0.5 * L_dom)
    throw ConfigFieldError("amplitude", "translation larger than L_dom/2");
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  json j;
  if (c.command) j["command"] = to_string(*c.command);
  j["model"] = c.model;
  if (!c.flux_coefficients.empty()) {
    j["flux_coefficients"] = c.flux_coefficients;
    j["entropy_coefficients"] = c.entropy_coefficients;
  }
  if (std::isfinite(c.radius)) j["radius"] = c.radius;
  if (c.s_minus) {
    j["s_minus"] = *c.s_minus;
    j["s_plus"] = *c.s_plus;
  }
  j["eps"] = c.eps;
  j["nu"] = c.nu;
  if (c.lambda) j["lambda"] = *c.lambda;
  j["eps0"] = c.eps0;
  if (c.L_dom) j["L_dom"] = *c.L_dom;
  j["n_cells"] = c.n_cells;
  j["T"] = c.T;
  j["cfl"] = c.cfl;
  if (c.dt) j["dt"] = *c.dt;
  j["output_interval"] = c.output_interval;
  j["perturbation"] = to_string(c.perturbation.kind);
  j["amplitude"] = c.perturbation.amplitude;
  j["width"] = c.perturbation.width;
  j["center"] = c.perturbation.center;
  j["seed"] = c.perturbation.seed;
  j["modes"] = c.perturbation.modes;
  if (!c.perturbation.samples.empty()) j["perturbation_samples"] = c.perturbation.samples;
  j["samples"] = c.samples;
  j["anneal_iterations"] = c.anneal_iterations;
  j["delta"] = c.delta;
  j["norm_cap"] = c.norm_cap;
  j["C_bar"] = c.C_bar;
  j["gn_p"] = c.gn_p;
  j["gn_q"] = c.gn_q;
  if (!c.grid.empty()) {
    json g = json::object();
    for (const auto& [k, v] : c.grid) g[k] = v;
    j["grid"] = g;
  }
  return j;
}

ExperimentConfig with_override(const ExperimentConfig& config, const std::string& field, const json& value) {
  if (std::find(sweepable().begin(), sweepable().end(), field) == sweepable().end())
    throw ConfigFieldError("grid." + field, "field cannot be swept");
  ExperimentConfig c = config;
  setters().at(field)(c, value);
  return c;
}

}  // namespace shocklab
