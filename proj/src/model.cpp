#include "bphz/model.hpp"

#include <stdexcept>

#include "bphz/symbol_text.hpp"

namespace bphz {

void SamplePath::validate() const {
  if (xi.size() != xi_dot.size()) throw std::invalid_argument("noise and derivative channel counts differ");
  for (std::size_t i = 0; i < xi.size(); ++i)
    if (xi[i].size() != size() || xi_dot[i].size() != size())
      throw std::invalid_argument("channel " + std::to_string(i + 1) + " has the wrong length");
}

namespace {

const std::vector<double>& channel(const std::vector<std::vector<double>>& c, int noise) {
  if (noise < 1 || static_cast<std::size_t>(noise) > c.size())
    throw DomainError("path has no channel for noise " + std::to_string(noise));
  return c[static_cast<std::size_t>(noise - 1)];
}

ElementaryShape require_shape(const TypedTree& tau) {
  auto shape = elementary_shape(tau);
  if (!shape) throw DomainError("'" + format_tree(tau) + "' has no model value");
  return *shape;
}

void check_base(std::size_t base, const SamplePath& path) {
  if (base >= path.size()) throw DomainError("base point " + std::to_string(base) + " is off the grid");
}

/// Pointwise product over root branches; `shift` recentres I and I(Xi).
std::vector<double> evaluate(const TypedTree& tau, const SamplePath& path, bool recentre, std::size_t base) {
  const ElementaryShape shape = require_shape(tau);
  const std::size_t n = path.size();
  std::vector<double> out(n, 1.0);
  for (const auto& [i, c] : shape.xi) {
    const auto& v = channel(path.xi_dot, i);
    for (int k = 0; k < c; ++k)
      for (std::size_t r = 0; r < n; ++r) out[r] *= v[r];
  }
  const double t_base = recentre ? path.time(base) : 0.0;
  for (int k = 0; k < shape.bare_integrations; ++k)
    for (std::size_t r = 0; r < n; ++r) out[r] *= path.time(r) - t_base;
  for (const auto& [j, c] : shape.chain) {
    const auto& v = channel(path.xi, j);
    const double v_base = recentre ? v[base] : 0.0;
    for (int k = 0; k < c; ++k)
      for (std::size_t r = 0; r < n; ++r) out[r] *= v[r] - v_base;
  }
  return out;
}

}  // namespace

std::vector<double> eval_bold_pi(const TypedTree& tau, const SamplePath& path) {
  return evaluate(tau, path, false, 0);
}

ModelEval eval_pi(std::size_t base, const TypedTree& tau, const SamplePath& path) {
  check_base(base, path);
  return ModelEval{base, evaluate(tau, path, true, base)};
}

ModelEval eval_pi(std::size_t base, const LinComb<double>& x, const SamplePath& path) {
  check_base(base, path);
  ModelEval out{base, std::vector<double>(path.size(), 0.0)};
  for (const auto& [k, t] : x) {
    if (!t.forest.is_tree()) throw DomainError("the model is evaluated on trees, got '" + format_forest(t.forest) + "'");
    const auto v = evaluate(t.forest.as_tree(), path, true, base);
    for (std::size_t r = 0; r < v.size(); ++r) out.values[r] += t.coefficient * v[r];
  }
  return out;
}

ModelEval eval_pi_bphz(std::size_t base, const TypedTree& tau, const SamplePath& path, TwistedAntipode& antipode,
                       const CovarianceSpec& cov) {
  const auto exact = renormalized_expansion<Rational>(tau, antipode, cov);
  return eval_pi(base, convert<double>(exact, [](const Rational& q) { return q.get_d(); }), path);
}

ModelEval eval_pi_bphz(std::size_t base, const TypedTree& tau, const SamplePath& path, TwistedAntipode& antipode,
                       const NumericCovariance& cov) {
  return eval_pi_bphz(base, tau, path, antipode, exact_covariance(cov));
}

GammaIncrements<double> eval_gamma(std::size_t t, std::size_t s, const SamplePath& path) {
  check_base(t, path);
  check_base(s, path);
  GammaIncrements<double> g{path.time(t) - path.time(s), {}};
  for (int i = 1; i <= path.d(); ++i) {
    const auto& v = channel(path.xi, i);
    g.dxi[i] = v[t] - v[s];
  }
  return g;
}

GammaIncrements<Polynomial> symbolic_gamma(int d) {
  GammaIncrements<Polynomial> g{Polynomial::variable("g(I)"), {}};
  for (int i = 1; i <= d; ++i) g.dxi[i] = Polynomial::variable("g(I(Xi_" + std::to_string(i) + "))");
  return g;
}

namespace {

template <class Scalar>
std::string coeff_text(const Scalar& c) {
  if constexpr (std::is_same_v<Scalar, Polynomial>)
    return c.to_string();
  else
    return to_string(c);
}

template <class Scalar>
std::string describe(const LinComb<Scalar>& x) {
  return format_symbol_with(x, [](const Scalar& c) { return coeff_text(c); });
}

template <class Scalar, class Cov>
CheckReport plain_check(const StructureSpec& spec, const Cov& cov, int n_max) {
  CheckReport report;
  report.check = "bphz-plain";
  TwistedAntipode antipode(spec);
  const int d = spec.d();

  auto single = [](const TypedTree& t, Scalar c) { return LinComb<Scalar>(Forest(t), std::move(c)); };
  auto compare = [&](const TypedTree& tau, const LinComb<Scalar>& expected) {
    ++report.identities_checked;
    LinComb<Scalar> got = renormalized_expansion<Scalar>(tau, antipode, cov);
    if (!(got == expected)) {
      report.passed = false;
      report.witnesses.push_back(format_tree(tau) + ": pipeline gives " + describe(got) + ", closed form " +
                                 describe(expected));
    }
  };

  compare(sym::unit(), single(sym::unit(), Scalar(1)));
  for (int i = 1; i <= d; ++i) {
    compare(sym::xi(i), single(sym::xi(i), Scalar(1)));
    for (int n = 1; n <= n_max; ++n) compare(sym::integ_xi_pow(i, n), single(sym::integ_xi_pow(i, n), Scalar(1)));
  }

  std::vector<std::string> alternative_failures;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      for (int n = 1; n <= n_max; ++n) {
        const TypedTree tau = sym::xi_integ_xi_pow(i, j, n);
        if (spec.degree(tau) >= 0) {
          report.skipped.push_back(format_tree(tau) + " (degree " + to_string(spec.degree(tau)) + " is not negative)");
          continue;
        }
        const Scalar c = covariance_value(cov, GaussianVar::d(i), GaussianVar::x(j));
        const Scalar correction = Scalar(-n) * c;
        LinComb<Scalar> expected = single(tau, Scalar(1));
        expected.add(Forest(sym::integ_xi_pow(j, n - 1)), correction);
        compare(tau, expected);

        LinComb<Scalar> alternative = single(tau, Scalar(1));
        alternative.add(Forest(sym::xi_integ_xi_pow(i, j, n - 1)), correction);
        if (!(renormalized_expansion<Scalar>(tau, antipode, cov) == alternative))
          alternative_failures.push_back(format_tree(tau));
      }
  if (!alternative_failures.empty())
    report.notes.push_back("correction factor Xi_i*I(Xi_j)^(n-1) in place of I(Xi_j)^(n-1) fails for " +
                           std::to_string(alternative_failures.size()) + " symbols, first " +
                           alternative_failures.front());
  return report;
}

}  // namespace

CheckReport check_bphz_plain(const StructureSpec& spec, int n_max) {
  return plain_check<Polynomial>(spec, SymbolicCovariance{}, n_max);
}

CheckReport check_bphz_plain(const StructureSpec& spec, const CovarianceSpec& cov, int n_max) {
  if (cov.d() != spec.d()) throw ConfigError("covariance dimension does not match d");
  return plain_check<Rational>(spec, cov, n_max);
}

CheckReport check_gamma_bphz(const StructureSpec& spec, int n_max) {
  CheckReport report;
  report.check = "gamma-bphz";
  TwistedAntipode antipode(spec);
  const SymbolicCovariance cov;
  const auto g = symbolic_gamma(spec.d());
  for (const auto& tau : spec.basis()) {
    const auto shape = elementary_shape(tau);
    if (shape->bare_integrations + shape->chain_total() > n_max) continue;
    const LinComb<Polynomial> direct = gamma_direct(tau, g);
    const std::pair<std::string, LinComb<Polynomial>> routes[] = {
        {"coproduct", gamma_via_coproduct(tau, g, spec)},
        {"renormalized", gamma_hat(tau, g, spec, antipode, cov, true)},
        {"renormalized without antipode", gamma_hat(tau, g, spec, antipode, cov, false)},
    };
    for (const auto& [name, value] : routes) {
      ++report.identities_checked;
      if (!(value == direct)) {
        report.passed = false;
        report.witnesses.push_back(format_tree(tau) + " (" + name + "): " + describe(value) + " vs " + describe(direct));
      }
    }
  }
  return report;
}

}  // namespace bphz
