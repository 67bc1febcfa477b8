#pragma once

#include <random>
#include <vector>

#include "bphz/structure.hpp"
#include "bphz/symbols.hpp"

namespace bphz::testing {

/// A random element of the generic symbol set with power at most `n_max`.
inline TypedTree random_symbol(std::mt19937_64& rng, int d, int n_max) {
  std::uniform_int_distribution<int> noise(1, d), power(1, n_max), shape(0, 5);
  switch (shape(rng)) {
    case 0:
      return sym::unit();
    case 1:
      return sym::xi(noise(rng));
    case 2:
      return tree_power(sym::integ(), power(rng));
    case 3:
      return sym::xi_integ_pow(noise(rng), power(rng));
    case 4:
      return sym::integ_xi_pow(noise(rng), power(rng));
    default: {
      const int i = noise(rng);
      return sym::xi_integ_xi_pow(i, noise(rng), power(rng));
    }
  }
}

/// Random forest of symbols with at most `max_edges` edges in total.
inline Forest random_forest(std::mt19937_64& rng, int d, int n_max, std::size_t max_edges) {
  std::vector<TypedTree> trees;
  std::size_t edges = 0;
  std::uniform_int_distribution<int> count(0, 4);
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    TypedTree t = random_symbol(rng, d, n_max);
    if (edges + t.edge_count() > max_edges) break;
    edges += t.edge_count();
    trees.push_back(t);
  }
  return Forest(trees);
}

inline Rational rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline StructureSpec generic_spec(int d, int truncation) {
  return StructureSpec(std::vector<Rational>(static_cast<std::size_t>(d), Rational(1, truncation + 2)), truncation);
}

}  // namespace bphz::testing
