#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bphz/coalgebra.hpp"
#include "bphz/errors.hpp"
#include "bphz/lincomb.hpp"
#include "bphz/polynomial.hpp"
#include "bphz/rational.hpp"
#include "bphz/symbols.hpp"

namespace bphz {

/// D_i is the derivative of noise i at the origin, X_j the noise itself.
struct GaussianVar {
  enum class Kind : std::uint8_t { D, X };
  Kind kind = Kind::D;
  int index = 1;

  static GaussianVar d(int i) { return {Kind::D, i}; }
  static GaussianVar x(int j) { return {Kind::X, j}; }
  std::string name() const { return (kind == Kind::D ? "D" : "X") + std::to_string(index); }
  auto operator<=>(const GaussianVar&) const = default;
};

/// Multiset of variables, stored as counts.
class GaussianMonomial {
 public:
  GaussianMonomial() = default;
  GaussianMonomial(std::initializer_list<GaussianVar> vars) {
    for (const auto& v : vars) multiply(v);
  }

  void multiply(const GaussianVar& v, int power = 1) {
    if (power > 0) counts_[v] += power;
  }
  int degree() const;
  const std::map<GaussianVar, int>& counts() const { return counts_; }
  std::vector<GaussianVar> expanded() const;
  friend bool operator==(const GaussianMonomial&, const GaussianMonomial&) = default;

 private:
  std::map<GaussianVar, int> counts_;
};

/// Rational covariance of the 2d variables D_1..D_d, X_1..X_d. Symmetric by
/// construction; positive semidefiniteness is not required.
class CovarianceSpec {
 public:
  explicit CovarianceSpec(int d);

  int d() const { return d_; }
  std::size_t index(const GaussianVar& v) const;
  const Rational& operator()(const GaussianVar& u, const GaussianVar& v) const {
    return c_[index(u) * dim() + index(v)];
  }
  void set(const GaussianVar& u, const GaussianVar& v, const Rational& value);
  std::size_t dim() const { return static_cast<std::size_t>(2 * d_); }

  /// Whitespace-separated 2d x 2d matrix, one row per line, rows ordered
  /// D_1..D_d, X_1..X_d. `#` starts a comment. Throws ConfigError unless
  /// square, even-sized and symmetric.
  static CovarianceSpec parse(const std::string& text);
  static CovarianceSpec load(const std::string& path);
  std::string to_text() const;

  /// Entries p/q with |p| <= 9, 1 <= q <= 9.
  static CovarianceSpec random_symmetric(int d, std::mt19937_64& rng);
  /// A A^T for a random small-integer A: rational and positive semidefinite.
  static CovarianceSpec random_psd(int d, std::mt19937_64& rng);

 private:
  int d_;
  std::vector<Rational> c_;
};

/// Floating-point covariance in the same variable layout, for simulated
/// noises.
struct NumericCovariance {
  explicit NumericCovariance(int d) : d(d), c(static_cast<std::size_t>(4 * d * d), 0.0) {}
  int d;
  std::vector<double> c;

  std::size_t index(const GaussianVar& v) const {
    return static_cast<std::size_t>(v.kind == GaussianVar::Kind::D ? v.index - 1 : d + v.index - 1);
  }
  double operator()(const GaussianVar& u, const GaussianVar& v) const {
    return c[index(u) * static_cast<std::size_t>(2 * d) + index(v)];
  }
  void set(const GaussianVar& u, const GaussianVar& v, double value) {
    c[index(u) * static_cast<std::size_t>(2 * d) + index(v)] = value;
    c[index(v) * static_cast<std::size_t>(2 * d) + index(u)] = value;
  }
};

/// Exact rational image of a floating-point covariance.
CovarianceSpec exact_covariance(const NumericCovariance& cov);

/// Every covariance is an independent indeterminate named `c(U,V)` with U
/// and V in sorted order.
struct SymbolicCovariance {
  Polynomial operator()(const GaussianVar& u, const GaussianVar& v) const;
  static std::string symbol(const GaussianVar& u, const GaussianVar& v);
};

inline Rational covariance_value(const CovarianceSpec& c, const GaussianVar& u, const GaussianVar& v) { return c(u, v); }
inline double covariance_value(const NumericCovariance& c, const GaussianVar& u, const GaussianVar& v) { return c(u, v); }
inline Polynomial covariance_value(const SymbolicCovariance& c, const GaussianVar& u, const GaussianVar& v) {
  return c(u, v);
}

namespace detail {

template <class Scalar, class Cov>
Scalar pair_sum(std::vector<std::pair<GaussianVar, int>>& counts, const Cov& cov) {
  std::size_t first = 0;
  while (first < counts.size() && counts[first].second == 0) ++first;
  if (first == counts.size()) return Scalar(1);
  const GaussianVar u = counts[first].first;
  --counts[first].second;
  Scalar total(0);
  for (auto& [v, n] : counts) {
    if (n == 0) continue;
    const int ways = n;
    --n;
    Scalar rest = pair_sum<Scalar>(counts, cov);
    ++n;
    if (!ScalarTraits<Scalar>::is_zero(rest)) total += Scalar(ways) * covariance_value(cov, u, v) * rest;
  }
  ++counts[first].second;
  return total;
}

}  // namespace detail

/// Sum over perfect pairings of the product of pair covariances. The first
/// remaining factor is paired with each possible partner in turn; identical
/// partners are grouped by multiplicity.
template <class Scalar, class Cov>
Scalar isserlis_moment(const GaussianMonomial& m, const Cov& cov) {
  if (m.degree() % 2 != 0) return Scalar(0);
  std::vector<std::pair<GaussianVar, int>> counts(m.counts().begin(), m.counts().end());
  return detail::pair_sum<Scalar>(counts, cov);
}

inline Rational isserlis_moment(const GaussianMonomial& m, const CovarianceSpec& cov) {
  return isserlis_moment<Rational>(m, cov);
}

/// The monomial a tree evaluates to at the origin, or nullopt when a bare I
/// factor (which vanishes there) is present. Throws DomainError outside the
/// tree-product closure of Xi_i, I, I(Xi_j).
std::optional<GaussianMonomial> origin_monomial(const TypedTree& t);

/// Tree values of g_minus, reused across the terms of a linear combination.
template <class Scalar, class Cov>
class GMinusCache {
 public:
  explicit GMinusCache(const Cov& cov) : cov_(cov) {}

  const Scalar& tree(const TypedTree& t) {
    auto it = values_.find(t.key());
    if (it != values_.end()) return it->second;
    auto m = origin_monomial(t);
    Scalar v = m ? isserlis_moment<Scalar>(*m, cov_) : Scalar(0);
    return values_.emplace(t.key(), std::move(v)).first->second;
  }

  Scalar forest(const Forest& f) {
    Scalar out(1);
    for (const auto& t : f.trees()) {
      const Scalar& v = tree(t);
      if (ScalarTraits<Scalar>::is_zero(v)) return Scalar(0);
      out = out * v;
    }
    return out;
  }

 private:
  const Cov& cov_;
  std::map<std::string, Scalar> values_;
};

/// E[Pi tau(0)], multiplicative over the forest.
template <class Scalar, class Cov>
Scalar g_minus(const Forest& f, const Cov& cov) {
  GMinusCache<Scalar, Cov> cache(cov);
  return cache.forest(f);
}

template <class Scalar, class Cov>
Scalar g_minus(const LinComb<Rational>& x, const Cov& cov) {
  GMinusCache<Scalar, Cov> cache(cov);
  Scalar out(0);
  for (const auto& [k, t] : x) {
    Scalar v = cache.forest(t.forest);
    if (!ScalarTraits<Scalar>::is_zero(v)) out += from_rational<Scalar>(t.coefficient) * v;
  }
  return out;
}

inline Rational g_minus(const Forest& f, const CovarianceSpec& cov) { return g_minus<Rational>(f, cov); }

/// g_minus of the twisted antipode.
template <class Scalar, class Cov>
Scalar g_antipode(const Forest& f, TwistedAntipode& antipode, const Cov& cov) {
  // Both maps are multiplicative over the forest.
  Scalar out(1);
  for (const auto& t : f.trees()) {
    out = out * g_minus<Scalar>(antipode.tree(t), cov);
    if (ScalarTraits<Scalar>::is_zero(out)) break;
  }
  return out;
}

inline Rational g_antipode(const Forest& f, TwistedAntipode& antipode, const CovarianceSpec& cov) {
  return g_antipode<Rational>(f, antipode, cov);
}

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Sample mean of the monomial over joint normal draws with covariance
/// `cov`. Work is split into fixed chunks with their own seeded streams, so
/// the result does not depend on the thread count. Throws DomainError when
/// `cov` is not positive semidefinite.
MonteCarloEstimate mc_moment_oracle(const GaussianMonomial& m, const CovarianceSpec& cov, std::uint64_t n_samples,
                                    std::uint64_t seed);

}  // namespace bphz
