#pragma once

#include <map>
#include <string>
#include <vector>

#include "bphz/coalgebra.hpp"
#include "bphz/errors.hpp"
#include "bphz/gaussian.hpp"
#include "bphz/lincomb.hpp"
#include "bphz/structure.hpp"
#include "bphz/symbols.hpp"

namespace bphz {

/// Noises sampled on t_k = t0 + k*dt. `xi[i-1]` holds noise i, `xi_dot[i-1]`
/// its derivative channel.
struct SamplePath {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<std::vector<double>> xi;
  std::vector<std::vector<double>> xi_dot;

  std::size_t size() const { return xi.empty() ? 0 : xi.front().size(); }
  int d() const { return static_cast<int>(xi.size()); }
  double time(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
  /// Throws std::invalid_argument if channels disagree in length.
  void validate() const;
};

struct ModelEval {
  std::size_t base = 0;
  std::vector<double> values;
};

/// Pi(tau)(t_k): Xi_i -> xi_dot_i, I -> t, I(Xi_i) -> xi_i, multiplied over
/// root branches.
std::vector<double> eval_bold_pi(const TypedTree& tau, const SamplePath& path);

/// Pi_s tau with I and I(Xi_i) recentred at the grid point `base`.
ModelEval eval_pi(std::size_t base, const TypedTree& tau, const SamplePath& path);
ModelEval eval_pi(std::size_t base, const LinComb<double>& x, const SamplePath& path);

/// The values gamma_ts takes on I and on I(Xi_i).
template <class Scalar>
struct GammaIncrements {
  Scalar dt;
  std::map<int, Scalar> dxi;
};

GammaIncrements<double> eval_gamma(std::size_t t, std::size_t s, const SamplePath& path);
/// Free indeterminates `g(I)` and `g(I(Xi_i))`, i = 1..d.
GammaIncrements<Polynomial> symbolic_gamma(int d);

namespace detail {

template <class Scalar>
const Scalar& chain_increment(const GammaIncrements<Scalar>& g, int noise) {
  auto it = g.dxi.find(noise);
  if (it == g.dxi.end()) throw DomainError("no increment for noise " + std::to_string(noise));
  return it->second;
}

template <class Scalar>
LinComb<Scalar> unit_comb(const TypedTree& t) {
  return LinComb<Scalar>(Forest(t), Scalar(1));
}

}  // namespace detail

/// gamma_ts on a tree of the positive sector: multiplicative over root
/// branches I and I(Xi_i). Throws DomainError on any other branch.
template <class Scalar>
Scalar gamma_character(const TypedTree& t, const GammaIncrements<Scalar>& g) {
  auto shape = elementary_shape(t);
  if (!shape || !shape->xi.empty()) throw DomainError("gamma is not defined on this symbol");
  Scalar out(1);
  for (int k = 0; k < shape->bare_integrations; ++k) out = out * g.dt;
  for (const auto& [j, c] : shape->chain)
    for (int k = 0; k < c; ++k) out = out * detail::chain_increment(g, j);
  return out;
}

/// Gamma_ts from the recentring rules: Xi -> Xi, I -> I + (t-s),
/// I(Xi_i) -> I(Xi_i) + (xi_i(t) - xi_i(s)), multiplicative.
template <class Scalar>
LinComb<Scalar> gamma_direct(const TypedTree& tau, const GammaIncrements<Scalar>& g) {
  LinComb<Scalar> out = detail::unit_comb<Scalar>(TypedTree{});
  for (const auto& branch : tau.root_branches()) {
    LinComb<Scalar> b = detail::unit_comb<Scalar>(branch);
    const int top = branch.children(0).front();
    const EdgeType type = branch.edge_type(top);
    if (!type.is_noise()) {
      const TypedTree below = branch.subtree(top);
      if (below.is_unit()) {
        b.add(Forest{}, g.dt);
      } else {
        auto inner = elementary_shape(branch);
        if (!inner || inner->chain_total() != 1) throw DomainError("gamma is not defined on this symbol");
        b.add(Forest{}, detail::chain_increment(g, inner->chain.begin()->first));
      }
    } else if (!branch.subtree(top).is_unit()) {
      throw DomainError("gamma is not defined on this symbol");
    }
    out = tree_product(out, b);
  }
  return out;
}

template <class Scalar>
LinComb<Scalar> gamma_direct(const LinComb<Scalar>& x, const GammaIncrements<Scalar>& g) {
  LinComb<Scalar> out;
  for (const auto& [k, t] : x) out += gamma_direct(t.forest.as_tree(), g) * t.coefficient;
  return out;
}

/// Gamma_ts = (Id (x) gamma_ts) delta_plus_ex.
template <class Scalar>
LinComb<Scalar> gamma_via_coproduct(const TypedTree& tau, const GammaIncrements<Scalar>& g, const StructureSpec& spec) {
  LinComb<Scalar> out;
  for (const auto& [k, p] : delta_plus_ex(tau, spec))
    out.add(p.left, from_rational<Scalar>(p.coefficient) * gamma_character(p.right.as_tree(), g));
  return out;
}

/// Renormalized recentring
///   (Id (x) gamma_ts (g Atilde (x) Id) delta_minus_ex) delta_plus_ex tau,
/// or with g in place of g Atilde when `with_antipode` is false. Right legs of
/// delta_minus_ex are projected onto the positive sector before gamma.
template <class Scalar, class Cov>
LinComb<Scalar> gamma_hat(const TypedTree& tau, const GammaIncrements<Scalar>& g, const StructureSpec& spec,
                          TwistedAntipode& antipode, const Cov& cov, bool with_antipode = true) {
  LinComb<Scalar> out;
  for (const auto& [k, p] : delta_plus_ex(tau, spec)) {
    Scalar value(0);
    for (const auto& [kk, q] : delta_minus_ex(p.right, spec)) {
      const TypedTree right = q.right.as_tree();
      if (!survives_plus(right, spec)) continue;
      Scalar character = with_antipode ? g_antipode<Scalar>(q.left, antipode, cov) : g_minus<Scalar>(q.left, cov);
      if (ScalarTraits<Scalar>::is_zero(character)) continue;
      value += from_rational<Scalar>(q.coefficient) * character * gamma_character(right, g);
    }
    out.add(p.left, from_rational<Scalar>(p.coefficient) * value);
  }
  return out;
}

/// (g Atilde (x) Id) delta_minus_ex tau: the renormalized symbol whose
/// ordinary model is the renormalized model of tau.
template <class Scalar, class Cov>
LinComb<Scalar> renormalized_expansion(const TypedTree& tau, TwistedAntipode& antipode, const Cov& cov) {
  LinComb<Scalar> out;
  for (const auto& [k, p] : delta_minus_ex(tau, antipode.spec())) {
    Scalar character = g_antipode<Scalar>(p.left, antipode, cov);
    if (ScalarTraits<Scalar>::is_zero(character)) continue;
    out.add(p.right, from_rational<Scalar>(p.coefficient) * character);
  }
  return out;
}

/// Pi^hat_s tau evaluated on a path. The expansion is computed in exact
/// arithmetic; each coefficient is rounded once.
ModelEval eval_pi_bphz(std::size_t base, const TypedTree& tau, const SamplePath& path, TwistedAntipode& antipode,
                       const CovarianceSpec& cov);
/// The covariance entries are taken as exact binary rationals.
ModelEval eval_pi_bphz(std::size_t base, const TypedTree& tau, const SamplePath& path, TwistedAntipode& antipode,
                       const NumericCovariance& cov);

/// Outcome of an identity check. `witnesses` lists failing terms.
struct CheckReport {
  std::string check;
  bool passed = true;
  std::size_t identities_checked = 0;
  std::vector<std::string> witnesses;
  std::vector<std::string> skipped;
  std::vector<std::string> notes;
};

/// For all i, j and n <= n_max with negative degree of Xi_i I(Xi_j)^n, the
/// renormalized expansion equals
///   Xi_i I(Xi_j)^n - n c(D_i,X_j) I(Xi_j)^(n-1),
/// with covariances as free symbols; also Pi^hat = Pi on 1, Xi_i, I(Xi_i)^n.
/// A note records whether the reading with Xi_i I(Xi_j)^(n-1) in the
/// correction also holds.
CheckReport check_bphz_plain(const StructureSpec& spec, int n_max);
/// The same identities for a fixed rational covariance.
CheckReport check_bphz_plain(const StructureSpec& spec, const CovarianceSpec& cov, int n_max);

/// gamma_hat equals Gamma (both constructions) on every basis symbol with
/// power <= n_max, gamma values and covariances free. Checked with and
/// without the antipode.
CheckReport check_gamma_bphz(const StructureSpec& spec, int n_max);

}  // namespace bphz
