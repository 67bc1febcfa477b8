#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bphz/rational.hpp"

namespace bphz {

/// Plain-text `key = value` block. Blank lines and `#` comments are ignored;
/// keys are case-sensitive. Accessors throw ConfigError naming the field.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  Rational get_rational(const std::string& key) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  /// Comma- or whitespace-separated list of numbers.
  std::vector<double> get_double_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return values_; }
  /// Keys in sorted order, one `key = value` per line.
  std::string to_text() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace bphz
