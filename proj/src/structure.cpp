#include "bphz/structure.hpp"

#include <string>

#include "bphz/errors.hpp"
#include "bphz/symbols.hpp"

namespace bphz {

Rational DegreeMap::edge(const EdgeType& type) const {
  if (!type.is_noise()) return integration;
  return alpha.at(static_cast<std::size_t>(type.noise - 1)) - 1;
}

StructureSpec::StructureSpec(std::vector<Rational> alpha, int truncation) : truncation_(truncation) {
  if (alpha.empty()) throw ConfigError("d must be at least 1");
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] <= 0 || alpha[i] >= 1)
      throw ConfigError("alpha_" + std::to_string(i + 1) + " must lie in (0,1), got " + to_string(alpha[i]));
  if (truncation < 1) throw ConfigError("truncation must be at least 1");
  degrees_.alpha = std::move(alpha);
}

Rational StructureSpec::degree(const TypedTree& t) const {
  Rational sum = 0;
  for (std::size_t v = 1; v < t.node_count(); ++v) sum += degrees_.edge(t.edge_type(static_cast<int>(v)));
  return sum;
}

Rational StructureSpec::degree(const Forest& f) const {
  Rational sum = 0;
  for (const auto& t : f.trees()) sum += degree(t);
  return sum;
}

bool StructureSpec::in_symbol_set(const TypedTree& t) const {
  if (t.is_unit()) return true;
  auto shape = elementary_shape(t);
  if (!shape) return false;
  for (const auto& [i, c] : shape->xi)
    if (!valid_noise(i)) return false;
  for (const auto& [j, c] : shape->chain)
    if (!valid_noise(j)) return false;
  const int xis = shape->xi_total();
  const int bare = shape->bare_integrations;
  const int chains = shape->chain_total();
  if (xis > 1) return false;
  if (bare > 0 && chains > 0) return false;
  if (shape->chain.size() > 1) return false;
  const int n = bare + chains;
  if (n > truncation_) return false;
  if (rough_vol_) {
    if (bare > 0) return false;
    if (xis == 1 && shape->xi.begin()->first != 1) return false;
    if (chains > 0 && shape->chain.begin()->first != 2) return false;
  }
  return true;
}

bool StructureSpec::in_minus_set(const Forest& f) const {
  for (const auto& t : f.trees())
    if (!in_symbol_set(t)) return false;
  return true;
}

std::vector<TypedTree> StructureSpec::basis() const {
  std::vector<TypedTree> out{sym::unit()};
  if (rough_vol_) {
    out.push_back(sym::xi(1));
    for (int m = 1; m <= truncation_; ++m) out.push_back(sym::xi_integ_xi_pow(1, 2, m));
    for (int m = 1; m <= truncation_; ++m) out.push_back(sym::integ_xi_pow(2, m));
    return out;
  }
  for (int i = 1; i <= d(); ++i) out.push_back(sym::xi(i));
  for (int n = 1; n <= truncation_; ++n) out.push_back(tree_power(sym::integ(), n));
  for (int i = 1; i <= d(); ++i)
    for (int n = 1; n <= truncation_; ++n) out.push_back(sym::xi_integ_pow(i, n));
  for (int i = 1; i <= d(); ++i)
    for (int n = 1; n <= truncation_; ++n) out.push_back(sym::integ_xi_pow(i, n));
  for (int i = 1; i <= d(); ++i)
    for (int j = 1; j <= d(); ++j)
      for (int n = 1; n <= truncation_; ++n) out.push_back(sym::xi_integ_xi_pow(i, j, n));
  return out;
}

KeyValueConfig StructureSpec::to_config() const {
  KeyValueConfig cfg;
  if (rough_vol_) {
    cfg.set("H", to_string(rough_vol_->hurst));
    cfg.set("kappa", to_string(rough_vol_->kappa));
    return cfg;
  }
  cfg.set("d", std::to_string(d()));
  for (int i = 1; i <= d(); ++i) cfg.set("alpha_" + std::to_string(i), to_string(degrees_.alpha[i - 1]));
  cfg.set("truncation", std::to_string(truncation_));
  return cfg;
}

StructureSpec StructureSpec::from_config(const KeyValueConfig& cfg) {
  if (cfg.has("H") || cfg.has("kappa")) return rough_vol_spec(cfg.get_rational("H"), cfg.get_rational("kappa"));
  const long long d = cfg.get_int("d");
  if (d < 1 || d > 64) throw ConfigError("field 'd': expected 1..64, got " + std::to_string(d));
  std::vector<Rational> alpha;
  for (long long i = 1; i <= d; ++i) alpha.push_back(cfg.get_rational("alpha_" + std::to_string(i)));
  const long long trunc = cfg.get_int("truncation", kDefaultTruncation);
  if (trunc < 1 || trunc > 64) throw ConfigError("field 'truncation': expected 1..64");
  return StructureSpec(std::move(alpha), static_cast<int>(trunc));
}

int rough_vol_truncation(const Rational& hurst, const Rational& kappa) {
  const Rational step = hurst - kappa;
  const Rational half(1, 2);
  for (int m = 0;; ++m)
    if ((m + 1) * step - half - kappa > 0) return m;
}

StructureSpec rough_vol_spec(const Rational& hurst, const Rational& kappa) {
  const Rational half(1, 2);
  if (!(kappa > 0)) throw ConfigError("kappa must be positive");
  if (!(hurst > 0 && hurst < half)) throw ConfigError("H must lie in (0,1/2)");
  if (kappa >= hurst) throw ConfigError("kappa must be smaller than H");
  const int m = rough_vol_truncation(hurst, kappa);
  StructureSpec spec({half - kappa, hurst - kappa}, m);
  spec.rough_vol_ = RoughVolParams{hurst, kappa};
  return spec;
}

bool survives_minus(const Forest& f, const StructureSpec& spec) {
  for (const auto& t : f.trees())
    if (spec.degree(t) >= 0) return false;
  return true;
}

bool survives_plus(const TypedTree& t, const StructureSpec& spec) {
  for (const auto& b : t.root_branches())
    if (spec.degree(b) <= 0) return false;
  return true;
}

}  // namespace bphz
