#pragma once

#include <map>
#include <mutex>
#include <string>

#include "bphz/lincomb.hpp"
#include "bphz/structure.hpp"

namespace bphz {

/// Which extracted components the negative coproduct keeps.
enum class ExtractionRule {
  /// Tree products of Xi_i, I and I(Xi_j): the closure of the symbol set
  /// under the tree product. Coassociative.
  Closure,
  /// Only shapes of the (untruncated) symbol set itself. Kept to exhibit the
  /// failure of coassociativity.
  Strict,
};

/// Left legs forest-multiplied, right legs forest-multiplied.
template <class Scalar>
PairComb<Scalar> pair_product(const PairComb<Scalar>& a, const PairComb<Scalar>& b) {
  PairComb<Scalar> out;
  for (const auto& [ka, ta] : a)
    for (const auto& [kb, tb] : b)
      out.add(forest_product(ta.left, tb.left), forest_product(ta.right, tb.right), ta.coefficient * tb.coefficient);
  return out;
}

/// Sum over edge subsets A of A (x) R_A tau, multiplicative over forests.
/// Throws DomainError when a component is not a tree product of Xi_i, I,
/// I(Xi_j).
PairComb<Rational> delta_minus(const Forest& f, ExtractionRule rule = ExtractionRule::Closure);
PairComb<Rational> delta_minus(const TypedTree& t, ExtractionRule rule = ExtractionRule::Closure);

template <class Scalar>
PairComb<Scalar> delta_minus(const LinComb<Scalar>& x, ExtractionRule rule = ExtractionRule::Closure) {
  PairComb<Scalar> out;
  for (const auto& [k, t] : x)
    for (const auto& [kk, p] : delta_minus(t.forest, rule)) out.add(p.left, p.right, t.coefficient * from_rational<Scalar>(p.coefficient));
  return out;
}

/// delta_minus with left legs restricted to forests of negative-degree
/// components.
PairComb<Rational> delta_minus_ex(const Forest& f, const StructureSpec& spec);
PairComb<Rational> delta_minus_ex(const TypedTree& t, const StructureSpec& spec);

/// Multiplicative over root branches with
///   Xi_i -> Xi_i (x) 1 + 1 (x) Xi_i,  I -> I (x) 1 + 1 (x) I,
///   I(Xi_i) -> I(Xi_i) (x) 1 + I (x) Xi_i + 1 (x) I(Xi_i).
PairComb<Rational> delta_plus(const TypedTree& t);
/// delta_plus with the right leg projected onto trees whose root branches
/// all have positive degree.
PairComb<Rational> delta_plus_ex(const TypedTree& t, const StructureSpec& spec);

/// Recursive twisted antipode on forests of negative-degree components.
/// Results are memoized per tree; concurrent calls are safe.
class TwistedAntipode {
 public:
  explicit TwistedAntipode(StructureSpec spec) : spec_(std::move(spec)) {}

  const StructureSpec& spec() const { return spec_; }

  LinComb<Rational> operator()(const Forest& f);
  LinComb<Rational> operator()(const TypedTree& t);
  /// The memoized value of a single tree; stays valid for the lifetime of
  /// this object.
  const LinComb<Rational>& tree(const TypedTree& t);

  std::size_t memo_size() const;

 private:
  StructureSpec spec_;
  mutable std::mutex mutex_;
  std::map<std::string, LinComb<Rational>> memo_;
};

}  // namespace bphz
