#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bphz/rational.hpp"

namespace bphz {

/// Commutative polynomial in named indeterminates with exact rational
/// coefficients. Used to state identities that must hold for every value of
/// the covariances and path increments, not just sampled ones.
class Polynomial {
 public:
  /// Sorted (name, exponent) pairs with positive exponents.
  using Monomial = std::vector<std::pair<std::string, int>>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: implicit constant embedding
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT

  static Polynomial variable(const std::string& name);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  Rational constant() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Evaluates with every variable substituted; missing names throw.
  Rational evaluate(const std::map<std::string, Rational>& values) const;
  double evaluate(const std::map<std::string, double>& values) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

}  // namespace bphz
