#pragma once

#include <map>
#include <string>
#include <utility>

#include "bphz/polynomial.hpp"
#include "bphz/rational.hpp"
#include "bphz/tree.hpp"

namespace bphz {

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static bool is_zero(const Rational& x) { return x == 0; }
};

template <>
struct ScalarTraits<Polynomial> {
  static bool is_zero(const Polynomial& x) { return x.is_zero(); }
};

template <>
struct ScalarTraits<double> {
  static bool is_zero(double x) { return x == 0.0; }
};

template <class Scalar>
Scalar from_rational(const Rational& q) {
  return Scalar(q);
}
template <>
inline double from_rational<double>(const Rational& q) {
  return q.get_d();
}

/// Finite formal sum of forests. Zero coefficients are never stored.
template <class Scalar>
class LinComb {
 public:
  struct Term {
    Forest forest;
    Scalar coefficient;
  };
  using Map = std::map<std::string, Term>;

  LinComb() = default;
  explicit LinComb(const Forest& f, Scalar c = Scalar(1)) { add(f, std::move(c)); }
  explicit LinComb(const TypedTree& t, Scalar c = Scalar(1)) { add(Forest(t), std::move(c)); }

  void add(const Forest& f, const Scalar& c) {
    if (ScalarTraits<Scalar>::is_zero(c)) return;
    auto it = terms_.find(f.key());
    if (it == terms_.end()) {
      terms_.emplace(f.key(), Term{f, c});
    } else {
      it->second.coefficient += c;
      if (ScalarTraits<Scalar>::is_zero(it->second.coefficient)) terms_.erase(it);
    }
  }

  Scalar coefficient(const Forest& f) const {
    auto it = terms_.find(f.key());
    return it == terms_.end() ? Scalar(0) : it->second.coefficient;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  LinComb& operator+=(const LinComb& rhs) {
    for (const auto& [k, t] : rhs.terms_) add(t.forest, t.coefficient);
    return *this;
  }
  LinComb& operator-=(const LinComb& rhs) {
    for (const auto& [k, t] : rhs.terms_) add(t.forest, Scalar(0) - t.coefficient);
    return *this;
  }
  LinComb& operator*=(const Scalar& s) {
    if (ScalarTraits<Scalar>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second.coefficient *= s;
      if (ScalarTraits<Scalar>::is_zero(it->second.coefficient))
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(LinComb a, const Scalar& s) { return a *= s; }
  friend LinComb operator*(const Scalar& s, LinComb a) { return a *= s; }

  friend bool operator==(const LinComb& a, const LinComb& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
      if (i->first != j->first || !(i->second.coefficient == j->second.coefficient)) return false;
    return true;
  }

 private:
  Map terms_;
};

/// Bilinear extension of the forest product.
template <class Scalar>
LinComb<Scalar> forest_product(const LinComb<Scalar>& a, const LinComb<Scalar>& b) {
  LinComb<Scalar> out;
  for (const auto& [ka, ta] : a)
    for (const auto& [kb, tb] : b) out.add(forest_product(ta.forest, tb.forest), ta.coefficient * tb.coefficient);
  return out;
}

/// Bilinear extension of the tree product; every forest must be a tree.
template <class Scalar>
LinComb<Scalar> tree_product(const LinComb<Scalar>& a, const LinComb<Scalar>& b) {
  LinComb<Scalar> out;
  for (const auto& [ka, ta] : a)
    for (const auto& [kb, tb] : b)
      out.add(Forest(tree_product(ta.forest.as_tree(), tb.forest.as_tree())), ta.coefficient * tb.coefficient);
  return out;
}

template <class To, class From, class Convert>
LinComb<To> convert(const LinComb<From>& x, Convert&& f) {
  LinComb<To> out;
  for (const auto& [k, t] : x) out.add(t.forest, f(t.coefficient));
  return out;
}

/// Formal sum of forest pairs (left (x) right).
template <class Scalar>
class PairComb {
 public:
  struct Term {
    Forest left;
    Forest right;
    Scalar coefficient;
  };
  using Key = std::pair<std::string, std::string>;
  using Map = std::map<Key, Term>;

  void add(const Forest& left, const Forest& right, const Scalar& c) {
    if (ScalarTraits<Scalar>::is_zero(c)) return;
    Key key{left.key(), right.key()};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), Term{left, right, c});
    } else {
      it->second.coefficient += c;
      if (ScalarTraits<Scalar>::is_zero(it->second.coefficient)) terms_.erase(it);
    }
  }

  Scalar coefficient(const Forest& left, const Forest& right) const {
    auto it = terms_.find(Key{left.key(), right.key()});
    return it == terms_.end() ? Scalar(0) : it->second.coefficient;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  PairComb& operator+=(const PairComb& rhs) {
    for (const auto& [k, t] : rhs.terms_) add(t.left, t.right, t.coefficient);
    return *this;
  }

  friend bool operator==(const PairComb& a, const PairComb& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
      if (i->first != j->first || !(i->second.coefficient == j->second.coefficient)) return false;
    return true;
  }

 private:
  Map terms_;
};

}  // namespace bphz
