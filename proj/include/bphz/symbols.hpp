#pragma once

#include <map>
#include <optional>

#include "bphz/tree.hpp"

namespace bphz {

namespace sym {

inline TypedTree unit() { return TypedTree{}; }
inline TypedTree xi(int i) { return TypedTree::planted(EdgeType::noise_of(i), TypedTree{}); }
/// The bare integration edge I.
inline TypedTree integ() { return TypedTree::planted(EdgeType::integration(), TypedTree{}); }
/// I(t): integration edge planted on t.
inline TypedTree integ_of(const TypedTree& t) { return TypedTree::planted(EdgeType::integration(), t); }
/// I(Xi_i)^n
inline TypedTree integ_xi_pow(int i, int n) { return tree_power(integ_of(xi(i)), n); }
/// Xi_i I^n
inline TypedTree xi_integ_pow(int i, int n) { return tree_product(xi(i), tree_power(integ(), n)); }
/// Xi_i I(Xi_j)^n
inline TypedTree xi_integ_xi_pow(int i, int j, int n) { return tree_product(xi(i), integ_xi_pow(j, n)); }

}  // namespace sym

/// Root-branch census of a tree that is a tree product of the primitive
/// symbols Xi_i, I and I(Xi_j). Such trees form the closure of S under the
/// tree product; everything the coproducts produce from S stays inside it.
struct ElementaryShape {
  std::map<int, int> xi;     // noise index -> number of Xi leaves at the root
  int bare_integrations = 0;  // number of I leaves at the root
  std::map<int, int> chain;   // noise index -> number of I(Xi_j) branches

  int xi_total() const;
  int chain_total() const;
};

/// nullopt when some branch is not Xi_i, I or I(Xi_j).
std::optional<ElementaryShape> elementary_shape(const TypedTree& t);
inline bool is_elementary(const TypedTree& t) { return elementary_shape(t).has_value(); }

}  // namespace bphz
