#include "bphz/symbols.hpp"

namespace bphz {

int ElementaryShape::xi_total() const {
  int n = 0;
  for (const auto& [i, c] : xi) n += c;
  return n;
}

int ElementaryShape::chain_total() const {
  int n = 0;
  for (const auto& [i, c] : chain) n += c;
  return n;
}

std::optional<ElementaryShape> elementary_shape(const TypedTree& t) {
  ElementaryShape shape;
  for (int c : t.children(0)) {
    const EdgeType type = t.edge_type(c);
    const auto& grand = t.children(c);
    if (type.is_noise()) {
      if (!grand.empty()) return std::nullopt;
      ++shape.xi[type.noise];
    } else if (grand.empty()) {
      ++shape.bare_integrations;
    } else {
      if (grand.size() != 1) return std::nullopt;
      const int g = grand.front();
      const EdgeType gt = t.edge_type(g);
      if (!gt.is_noise() || !t.children(g).empty()) return std::nullopt;
      ++shape.chain[gt.noise];
    }
  }
  return shape;
}

}  // namespace bphz
