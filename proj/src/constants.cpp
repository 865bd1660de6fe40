#include "shocklab/constants.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "shocklab/errors.hpp"
#include "shocklab/format.hpp"

namespace shocklab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Constants Constants::parse(const std::string& text) {
  Constants c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("constants line " + std::to_string(lineno) + ": missing '='");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    char* end = nullptr;
    const double v = std::strtod(val.c_str(), &end);
    if (key.empty() || val.empty() || *end != '\0')
      throw ConfigError("constants line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
    c.values_[key] = v;
  }
  return c;
}

Constants Constants::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open constants file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Constants c = parse(ss.str());
  c.source_ = path;
  return c;
}

std::string Constants::default_path() {
  if (const char* env = std::getenv("SHOCKLAB_CONSTANTS")) return env;
  return SHOCKLAB_CONSTANTS_FILE;
}

const Constants& Constants::defaults() {
  static const Constants c = load(default_path());
  return c;
}

double Constants::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("constant '" + key + "' missing from " + source_);
  return it->second;
}

double Constants::get_or(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string Constants::to_text() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + format_double(v) + "\n";
  return out;
}

}  // namespace shocklab
