#include <doctest.h>

#include <cmath>
#include <random>

#include "bphz/errors.hpp"
#include "bphz/model.hpp"
#include "bphz/symbol_text.hpp"
#include "support.hpp"

using namespace bphz;
using testing::rational;

namespace {

using V = GaussianVar;

SamplePath smooth_path(std::size_t n) {
  SamplePath p;
  p.t0 = -0.5;
  p.dt = 1.0 / 64;
  p.xi.assign(2, std::vector<double>(n));
  p.xi_dot.assign(2, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double t = p.time(k);
    p.xi[0][k] = std::sin(3 * t) + 0.2;
    p.xi_dot[0][k] = 3 * std::cos(3 * t);
    p.xi[1][k] = t * t - 0.4 * t;
    p.xi_dot[1][k] = 2 * t - 0.4;
  }
  return p;
}

bool close(const std::vector<double>& a, const std::vector<double>& b, double tol = 1e-10) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > tol * std::max(1.0, std::abs(b[k]))) return false;
  return true;
}

}  // namespace

TEST_CASE("bold pi") {
  const auto p = smooth_path(100);
  for (double v : eval_bold_pi(sym::unit(), p)) CHECK(v == 1.0);
  const auto t = eval_bold_pi(sym::integ(), p);
  const auto x = eval_bold_pi(sym::xi_integ_xi_pow(1, 2, 3), p);
  for (std::size_t k = 0; k < p.size(); ++k) {
    CHECK(t[k] == doctest::Approx(p.time(k)));
    CHECK(x[k] == doctest::Approx(p.xi_dot[0][k] * std::pow(p.xi[1][k], 3)));
  }
  CHECK_THROWS_AS(eval_bold_pi(sym::integ_of(sym::integ()), p), DomainError);
  CHECK_THROWS_AS(eval_bold_pi(sym::xi(3), p), DomainError);
}

TEST_CASE("recentred pi") {
  const auto p = smooth_path(100);
  const std::size_t s = 37;
  CHECK(eval_pi(s, sym::integ_of(sym::xi(1)), p).values[s] == 0.0);
  const auto a = eval_pi(s, sym::xi_integ_xi_pow(2, 1, 2), p).values;
  const auto b = eval_pi(s, tree_power(sym::integ(), 3), p).values;
  for (std::size_t k = 0; k < p.size(); ++k) {
    CHECK(a[k] == doctest::Approx(p.xi_dot[1][k] * std::pow(p.xi[0][k] - p.xi[0][s], 2)));
    CHECK(b[k] == doctest::Approx(std::pow(p.time(k) - p.time(s), 3)));
  }
  CHECK_THROWS_AS(eval_pi(p.size(), sym::xi(1), p), DomainError);
  SamplePath bad = p;
  bad.xi_dot[1].pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("gamma examples") {
  const auto p = smooth_path(80);
  const StructureSpec spec = testing::generic_spec(2, 4);
  const auto g = eval_gamma(50, 20, p);
  CHECK(gamma_direct(sym::xi(1), g) == LinComb<double>(Forest(sym::xi(1)), 1.0));
  const auto gss = eval_gamma(20, 20, p);
  for (const auto& tau : spec.basis()) CHECK(gamma_direct(tau, gss) == LinComb<double>(Forest(tau), 1.0));

  const double h = p.xi[1][50] - p.xi[1][20];
  for (int n = 1; n <= 4; ++n) {
    const auto x = gamma_direct(sym::integ_xi_pow(2, n), g);
    CHECK(x.size() == static_cast<std::size_t>(n + 1));
    for (int l = 0; l <= n; ++l)
      CHECK(x.coefficient(Forest(sym::integ_xi_pow(2, l))) ==
            doctest::Approx(binomial(n, l).get_d() * std::pow(h, n - l)));
  }
}

TEST_CASE("model consistency and both gamma constructions") {
  const auto p = smooth_path(120);
  const StructureSpec spec = testing::generic_spec(2, 4);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t s = pick(rng), t = pick(rng), u = pick(rng);
    const auto gts = eval_gamma(t, s, p), gtu = eval_gamma(t, u, p), gus = eval_gamma(u, s, p);
    for (const auto& tau : spec.basis()) {
      const auto direct = gamma_direct(tau, gts);
      CHECK(close(eval_pi(s, tau, p).values, eval_pi(t, direct, p).values));
      const auto via = gamma_via_coproduct(tau, gts, spec);
      CHECK(close(eval_pi(t, via, p).values, eval_pi(t, direct, p).values));
      const auto composed = gamma_direct(gamma_direct(LinComb<double>(Forest(tau), 1.0), gus), gtu);
      CHECK(close(eval_pi(t, composed, p).values, eval_pi(t, direct, p).values));
    }
  }
}

TEST_CASE("symbolic gamma constructions agree") {
  const StructureSpec spec = testing::generic_spec(2, 5);
  const auto g = symbolic_gamma(2);
  for (const auto& tau : spec.basis()) CHECK(gamma_via_coproduct(tau, g, spec) == gamma_direct(tau, g));
}

TEST_CASE("renormalized model") {
  const auto p = smooth_path(90);
  const StructureSpec spec = testing::generic_spec(2, 5);
  TwistedAntipode a(spec);
  std::mt19937_64 rng(4);
  const auto c = CovarianceSpec::random_symmetric(2, rng);
  const std::size_t s = 41;
  for (const auto& tau : {sym::unit(), sym::xi(1), sym::integ_xi_pow(2, 3)})
    CHECK(eval_pi_bphz(s, tau, p, a, c).values == eval_pi(s, tau, p).values);

  for (int n = 1; n <= 5; ++n) {
    const auto hat = eval_pi_bphz(s, sym::xi_integ_xi_pow(1, 2, n), p, a, c).values;
    const auto plain = eval_pi(s, sym::xi_integ_xi_pow(1, 2, n), p).values;
    const auto lower = eval_pi(s, sym::integ_xi_pow(2, n - 1), p).values;
    const double cc = c(V::d(1), V::x(2)).get_d();
    for (std::size_t k = 0; k < p.size(); ++k) CHECK(hat[k] == doctest::Approx(plain[k] - n * cc * lower[k]));
  }

  NumericCovariance nc(2);
  nc.set(V::d(1), V::x(2), 0.375);
  const auto hat = eval_pi_bphz(s, sym::xi_integ_xi_pow(1, 2, 1), p, a, nc).values;
  const auto plain = eval_pi(s, sym::xi_integ_xi_pow(1, 2, 1), p).values;
  for (std::size_t k = 0; k < p.size(); ++k) CHECK(hat[k] == plain[k] - 0.375);
}

TEST_CASE("renormalized expansion with free covariances") {
  const StructureSpec spec = testing::generic_spec(2, 4);
  TwistedAntipode a(spec);
  const auto x = renormalized_expansion<Polynomial>(sym::xi_integ_xi_pow(1, 1, 2), a, SymbolicCovariance{});
  CHECK(x.size() == 2);
  CHECK(x.coefficient(Forest(sym::xi_integ_xi_pow(1, 1, 2))) == Polynomial(1));
  CHECK(x.coefficient(Forest(sym::integ_xi_pow(1, 1))) ==
        Polynomial(-2) * Polynomial::variable(SymbolicCovariance::symbol(V::d(1), V::x(1))));
  CHECK(x.coefficient(Forest(sym::xi_integ_xi_pow(1, 1, 1))) == Polynomial(0));
}

TEST_CASE("plain expression check") {
  const auto report = check_bphz_plain(testing::generic_spec(2, 6), 6);
  CHECK(report.passed);
  CHECK(report.witnesses.empty());
  CHECK(report.identities_checked == 1 + 2 * (1 + 6) + 4 * 6);
  CHECK(report.skipped.empty());
  REQUIRE(report.notes.size() == 1);

  std::mt19937_64 rng(5);
  const auto spec = testing::generic_spec(2, 5);
  CHECK(check_bphz_plain(spec, CovarianceSpec::random_symmetric(2, rng), 5).passed);
  CHECK(check_bphz_plain(spec, CovarianceSpec(2), 5).passed);
  CHECK_THROWS_AS(check_bphz_plain(spec, CovarianceSpec(1), 5), ConfigError);

  const auto partial = check_bphz_plain(StructureSpec({rational(1, 4), rational(1, 4)}, 6), 6);
  CHECK(partial.passed);
  CHECK(partial.skipped.size() == 4 * 4);
}

TEST_CASE("zero covariance leaves the model unchanged") {
  const StructureSpec spec = testing::generic_spec(2, 4);
  TwistedAntipode a(spec);
  const CovarianceSpec zero(2);
  for (const auto& tau : spec.basis())
    if (spec.degree(tau) < 0 || tau.is_unit())
      CHECK(renormalized_expansion<Rational>(tau, a, zero) == LinComb<Rational>(Forest(tau), Rational(1)));
}

TEST_CASE("renormalized recentring equals recentring") {
  const auto report = check_gamma_bphz(testing::generic_spec(2, 5), 5);
  CHECK(report.passed);
  CHECK(report.identities_checked == 3 * testing::generic_spec(2, 5).basis().size());
  CHECK(check_gamma_bphz(rough_vol_spec(rational(1, 10), rational(1, 100)), 8).passed);
}

TEST_CASE("rough volatility structure") {
  const auto spec = rough_vol_spec(rational(1, 4), rational(1, 50));
  const int m = spec.truncation();
  TwistedAntipode a(spec);
  std::mt19937_64 rng(6);
  const auto c = CovarianceSpec::random_symmetric(2, rng);
  for (int n = 1; n <= m; ++n) {
    LinComb<Rational> expected(Forest(sym::xi_integ_xi_pow(1, 2, n)), Rational(1));
    expected.add(Forest(sym::integ_xi_pow(2, n - 1)), -n * c(V::d(1), V::x(2)));
    CHECK(renormalized_expansion<Rational>(sym::xi_integ_xi_pow(1, 2, n), a, c) == expected);
  }
}
