#include "bphz/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "bphz/errors.hpp"

namespace bphz {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(std::string_view(trimmed).substr(0, eq));
    std::string value = trim(std::string_view(trimmed).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    cfg.values_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing field '" + key + "'");
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

Rational KeyValueConfig::get_rational(const std::string& key) const {
  try {
    return parse_rational(get_string(key));
  } catch (const ConfigError& e) {
    throw ConfigError("field '" + key + "': " + e.what());
  }
}

double KeyValueConfig::get_double(const std::string& key) const { return get_rational(key).get_d(); }

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long long KeyValueConfig::get_int(const std::string& key) const {
  Rational q = get_rational(key);
  if (q.get_den() != 1 || !q.get_num().fits_slong_p())
    throw ConfigError("field '" + key + "': expected an integer, got '" + get_string(key) + "'");
  return q.get_num().get_si();
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const {
  std::string raw = get_string(key);
  for (char& c : raw)
    if (c == ',') c = ' ';
  std::istringstream in(raw);
  std::vector<double> out;
  std::string item;
  while (in >> item) {
    try {
      out.push_back(parse_rational(item).get_d());
    } catch (const ConfigError& e) {
      throw ConfigError("field '" + key + "': " + e.what());
    }
  }
  if (out.empty()) throw ConfigError("field '" + key + "': empty list");
  return out;
}

std::string KeyValueConfig::to_text() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

}  // namespace bphz
