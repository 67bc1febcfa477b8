#pragma once

#include <optional>
#include <vector>

#include "bphz/config.hpp"
#include "bphz/lincomb.hpp"
#include "bphz/rational.hpp"
#include "bphz/tree.hpp"

namespace bphz {

/// |I| = integration, |Xi_i| = alpha_i - 1.
struct DegreeMap {
  std::vector<Rational> alpha;
  Rational integration = 1;

  Rational edge(const EdgeType& type) const;
};

struct RoughVolParams {
  Rational hurst;
  Rational kappa;
};

class StructureSpec {
 public:
  static constexpr int kDefaultTruncation = 8;

  /// Throws ConfigError unless every alpha lies in (0,1) and truncation >= 1.
  StructureSpec(std::vector<Rational> alpha, int truncation = kDefaultTruncation);

  int d() const { return static_cast<int>(degrees_.alpha.size()); }
  const DegreeMap& degrees() const { return degrees_; }
  int truncation() const { return truncation_; }
  const std::optional<RoughVolParams>& rough_vol() const { return rough_vol_; }

  Rational degree(const TypedTree& t) const;
  Rational degree(const Forest& f) const;

  /// Membership in the truncated symbol set. For the rough-volatility
  /// structure this is {1, Xi, Xi I(xi^)^m, I(xi^)^m : m <= M}.
  bool in_symbol_set(const TypedTree& t) const;
  /// Forest products of non-unit symbols, plus 1.
  bool in_minus_set(const Forest& f) const;
  bool valid_noise(int index) const { return index >= 1 && index <= d(); }

  /// Every symbol of the truncated set, in a fixed order.
  std::vector<TypedTree> basis() const;

  KeyValueConfig to_config() const;
  /// Reads either `H`, `kappa` or `d`, `alpha_1..alpha_d`, `truncation`.
  static StructureSpec from_config(const KeyValueConfig& cfg);

 private:
  friend StructureSpec rough_vol_spec(const Rational& hurst, const Rational& kappa);

  DegreeMap degrees_;
  int truncation_;
  std::optional<RoughVolParams> rough_vol_;
};

/// M = min{m : (m+1)(H-kappa) - 1/2 - kappa > 0}.
int rough_vol_truncation(const Rational& hurst, const Rational& kappa);

/// d = 2; noise 1 is xi with |Xi| = -1/2 - kappa, noise 2 is xi^ with
/// |I(xi^)| = H - kappa. Requires 0 < kappa < H < 1/2.
StructureSpec rough_vol_spec(const Rational& hurst, const Rational& kappa);

/// False when some component has nonnegative degree.
bool survives_minus(const Forest& f, const StructureSpec& spec);
/// False when some root branch has degree <= 0.
bool survives_plus(const TypedTree& t, const StructureSpec& spec);

template <class Scalar>
LinComb<Scalar> project_minus(const LinComb<Scalar>& x, const StructureSpec& spec) {
  LinComb<Scalar> out;
  for (const auto& [k, t] : x)
    if (survives_minus(t.forest, spec)) out.add(t.forest, t.coefficient);
  return out;
}

template <class Scalar>
LinComb<Scalar> project_plus(const LinComb<Scalar>& x, const StructureSpec& spec) {
  LinComb<Scalar> out;
  for (const auto& [k, t] : x)
    if (survives_plus(t.forest.as_tree(), spec)) out.add(t.forest, t.coefficient);
  return out;
}

}  // namespace bphz
