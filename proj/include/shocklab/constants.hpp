#pragma once

#include <map>
#include <string>

namespace shocklab {

/// Frozen empirical constants, stored as flat `key = value` lines ('#'
/// starts a comment).
class Constants {
 public:
  static Constants parse(const std::string& text);
  static Constants load(const std::string& path);
  /// File named by SHOCKLAB_CONSTANTS, else the installed share/constants.txt.
  static const Constants& defaults();
  static std::string default_path();

  double get(const std::string& key) const;
  double get_or(const std::string& key, double fallback) const;
  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, double>& values() const { return values_; }
  const std::string& source() const { return source_; }

  std::string to_text() const;

 private:
  std::map<std::string, double> values_;
  std::string source_;
};

}  // namespace shocklab
