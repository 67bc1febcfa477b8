#include "bphz/coalgebra.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "bphz/errors.hpp"
#include "bphz/symbol_text.hpp"
#include "bphz/symbols.hpp"

namespace bphz {

namespace {

/// Shape test on a connected edge set without materializing it: every edge
/// hangs off the top node, or is a noise leaf under an integration edge that
/// does.
bool component_is_elementary(const TypedTree& tree, std::span<const int> edges, bool strict) {
  std::uint64_t in = 0;
  for (int e : edges) in |= std::uint64_t{1} << e;
  auto member = [in](int v) { return v != 0 && ((in >> v) & 1u); };
  int top = -1;
  for (int e : edges)
    if (!member(tree.parent(e))) {
      top = tree.parent(e);
      break;
    }
  int xis = 0, bare = 0, chains = 0, chain_noise = 0;
  bool mixed_chain = false;
  for (int e : edges) {
    const int p = tree.parent(e);
    const EdgeType type = tree.edge_type(e);
    int inner = 0;
    int inner_edge = -1;
    for (int c : tree.children(e))
      if (member(c)) {
        ++inner;
        inner_edge = c;
      }
    if (p == top) {
      if (type.is_noise()) {
        if (inner != 0) return false;
        ++xis;
      } else if (inner == 0) {
        ++bare;
      } else {
        if (inner != 1 || !tree.edge_type(inner_edge).is_noise()) return false;
        const int j = tree.edge_type(inner_edge).noise;
        if (chains > 0 && j != chain_noise) mixed_chain = true;
        chain_noise = j;
        ++chains;
      }
    } else {
      // Must be the noise leaf of an I(Xi_j) branch.
      if (!type.is_noise() || inner != 0) return false;
      if (tree.parent(p) != top || tree.edge_type(p).is_noise()) return false;
    }
  }
  if (!strict) return true;
  return xis <= 1 && !(bare > 0 && chains > 0) && !mixed_chain;
}

/// Edge degrees scaled to integers by a common denominator, so the sign of
/// a component degree is an exact integer test.
class ScaledDegrees {
 public:
  explicit ScaledDegrees(const StructureSpec& spec) : spec_(spec) {
    mpz_class den = spec.degrees().integration.get_den();
    for (const auto& a : spec.degrees().alpha) den = lcm(den, mpz_class(a.get_den()));
    exact_ = den.fits_slong_p() && den < (1L << 30);
    if (!exact_) return;
    auto scale = [&den](const Rational& q, long long& out) {
      Rational s = q * den;
      if (!s.get_num().fits_slong_p() || abs(s.get_num()) >= (1L << 30)) return false;
      out = s.get_num().get_si();
      return true;
    };
    exact_ = scale(spec.degrees().integration, integration_);
    noise_.resize(spec.degrees().alpha.size());
    for (std::size_t i = 0; i < noise_.size() && exact_; ++i) exact_ = scale(spec.degrees().alpha[i] - 1, noise_[i]);
  }

  bool negative(const TypedTree& tree, std::span<const int> edges) const {
    if (!exact_) {
      Rational sum = 0;
      for (int e : edges) sum += spec_.degrees().edge(tree.edge_type(e));
      return sum < 0;
    }
    long long sum = 0;
    for (int e : edges) {
      const EdgeType t = tree.edge_type(e);
      sum += t.is_noise() ? noise_.at(static_cast<std::size_t>(t.noise - 1)) : integration_;
    }
    return sum < 0;
  }

 private:
  const StructureSpec& spec_;
  bool exact_ = false;
  long long integration_ = 0;
  std::vector<long long> noise_;
};

void require_elementary(const TypedTree& t) {
  if (!is_elementary(t)) throw DomainError("'" + format_tree(t) + "' is outside the domain of the negative coproduct");
}

PairComb<Rational> extractions_to_pairs(const std::vector<Extraction>& xs) {
  PairComb<Rational> out;
  for (const auto& x : xs) out.add(x.extracted, Forest(x.contracted), Rational(static_cast<long>(x.multiplicity)));
  return out;
}

template <class TreeMap>
PairComb<Rational> multiplicative(const Forest& f, TreeMap&& on_tree) {
  PairComb<Rational> out;
  out.add(Forest{}, Forest{}, Rational(1));
  for (const auto& t : f.trees()) out = pair_product(out, on_tree(t));
  return out;
}

}  // namespace

PairComb<Rational> delta_minus(const TypedTree& t, ExtractionRule rule) {
  require_elementary(t);
  const bool strict = rule == ExtractionRule::Strict;
  return extractions_to_pairs(subforest_extractions(t, [strict](const TypedTree& tree, std::span<const int> edges) {
    return component_is_elementary(tree, edges, strict);
  }));
}

PairComb<Rational> delta_minus(const Forest& f, ExtractionRule rule) {
  return multiplicative(f, [rule](const TypedTree& t) { return delta_minus(t, rule); });
}

PairComb<Rational> delta_minus_ex(const TypedTree& t, const StructureSpec& spec) {
  require_elementary(t);
  if (t.edge_count() >= 64) throw DomainError("tree too large for exhaustive subforest enumeration");
  const ScaledDegrees degrees(spec);
  return extractions_to_pairs(
      subforest_extractions(t, [&degrees](const TypedTree& tree, std::span<const int> edges) {
        return degrees.negative(tree, edges) && component_is_elementary(tree, edges, false);
      }));
}

PairComb<Rational> delta_minus_ex(const Forest& f, const StructureSpec& spec) {
  return multiplicative(f, [&spec](const TypedTree& t) { return delta_minus_ex(t, spec); });
}

PairComb<Rational> delta_plus(const TypedTree& t) {
  require_elementary(t);
  PairComb<Rational> out;
  out.add(Forest{}, Forest{}, Rational(1));
  const Forest one;
  for (const auto& branch : t.root_branches()) {
    PairComb<Rational> b;
    b.add(Forest(branch), one, Rational(1));
    b.add(one, Forest(branch), Rational(1));
    const int top = branch.children(0).front();
    if (!branch.children(top).empty()) {
      // I(Xi_i): the extra I (x) Xi_i term.
      b.add(Forest(sym::integ()), Forest(branch.subtree(top)), Rational(1));
    }
    // Tree product on both legs.
    PairComb<Rational> next;
    for (const auto& [ka, ta] : out)
      for (const auto& [kb, tb] : b)
        next.add(Forest(tree_product(ta.left.as_tree(), tb.left.as_tree())),
                 Forest(tree_product(ta.right.as_tree(), tb.right.as_tree())), ta.coefficient * tb.coefficient);
    out = std::move(next);
  }
  return out;
}

PairComb<Rational> delta_plus_ex(const TypedTree& t, const StructureSpec& spec) {
  PairComb<Rational> out;
  for (const auto& [k, p] : delta_plus(t))
    if (survives_plus(p.right.as_tree(), spec)) out.add(p.left, p.right, p.coefficient);
  return out;
}

LinComb<Rational> TwistedAntipode::operator()(const TypedTree& t) { return (*this)(Forest(t)); }

LinComb<Rational> TwistedAntipode::operator()(const Forest& f) {
  if (f.is_unit()) return LinComb<Rational>(Forest{}, Rational(1));
  LinComb<Rational> out = tree(f.trees().front());
  for (std::size_t k = 1; k < f.trees().size(); ++k) out = forest_product(out, tree(f.trees()[k]));
  return out;
}

std::size_t TwistedAntipode::memo_size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

const LinComb<Rational>& TwistedAntipode::tree(const TypedTree& t) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(t.key()); it != memo_.end()) return it->second;
  }
  if (!is_elementary(t) || spec_.degree(t) >= 0)
    throw DomainError("twisted antipode is defined on negative-degree symbols only, got '" + format_tree(t) + "'");

  LinComb<Rational> value;
  for (const auto& [k, p] : delta_minus_ex(t, spec_)) {
    if (p.right.is_unit()) continue;  // the tau (x) 1 term
    LinComb<Rational> term = forest_product((*this)(p.left), LinComb<Rational>(p.right, Rational(1)));
    value -= term * p.coefficient;
  }

  std::lock_guard lock(mutex_);
  return memo_.emplace(t.key(), std::move(value)).first->second;
}

}  // namespace bphz
