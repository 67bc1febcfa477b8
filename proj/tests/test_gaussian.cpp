#include <doctest.h>

#include <cmath>
#include <random>

#include "bphz/coalgebra.hpp"
#include "bphz/errors.hpp"
#include "bphz/gaussian.hpp"
#include "bphz/symbol_text.hpp"
#include "support.hpp"

using namespace bphz;
using testing::rational;

namespace {

using V = GaussianVar;

CovarianceSpec all_ones(int d) {
  CovarianceSpec c(d);
  for (int a = 1; a <= d; ++a)
    for (int b = 1; b <= d; ++b) {
      c.set(V::d(a), V::d(b), 1);
      c.set(V::d(a), V::x(b), 1);
      c.set(V::x(a), V::x(b), 1);
    }
  return c;
}

GaussianMonomial random_monomial(std::mt19937_64& rng, int d, int max_degree) {
  std::uniform_int_distribution<int> len(0, max_degree), kind(0, 1), idx(1, d);
  GaussianMonomial m;
  const int n = len(rng);
  for (int k = 0; k < n; ++k) m.multiply(kind(rng) ? V::d(idx(rng)) : V::x(idx(rng)));
  return m;
}

}  // namespace

TEST_CASE("isserlis examples") {
  std::mt19937_64 rng(1);
  const auto c = CovarianceSpec::random_symmetric(2, rng);
  CHECK(isserlis_moment(GaussianMonomial{}, c) == 1);
  CHECK(isserlis_moment(GaussianMonomial{V::x(1)}, c) == 0);
  CHECK(isserlis_moment(GaussianMonomial{V::x(1), V::d(2)}, c) == c(V::x(1), V::d(2)));
  const V v1 = V::d(1), v2 = V::d(2), v3 = V::x(1), v4 = V::x(2);
  CHECK(isserlis_moment(GaussianMonomial{v1, v2, v3, v4}, c) ==
        c(v1, v2) * c(v3, v4) + c(v1, v3) * c(v2, v4) + c(v1, v4) * c(v2, v3));
  CHECK(isserlis_moment(GaussianMonomial{v3, v3, v3, v3}, c) == 3 * c(v3, v3) * c(v3, v3));
  CHECK(isserlis_moment(GaussianMonomial{V::d(1), V::x(2), V::x(2)}, c) == 0);
}

TEST_CASE("odd moments vanish") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const auto c = CovarianceSpec::random_symmetric(2, rng);
    auto m = random_monomial(rng, 2, 9);
    if (m.degree() % 2 == 0) m.multiply(V::x(1));
    CHECK(isserlis_moment(m, c) == 0);
  }
}

TEST_CASE("pairing count") {
  const auto c = all_ones(2);
  std::mt19937_64 rng(3);
  long double_factorial = 1;
  for (int k = 1; k <= 6; ++k) {
    double_factorial *= 2 * k - 1;
    GaussianMonomial m;
    std::uniform_int_distribution<int> kind(0, 1), idx(1, 2);
    for (int i = 0; i < 2 * k; ++i) m.multiply(kind(rng) ? V::d(idx(rng)) : V::x(idx(rng)));
    CHECK(isserlis_moment(m, c) == double_factorial);
  }
}

TEST_CASE("chain rule identity for D X^(n+1)") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = CovarianceSpec::random_symmetric(2, rng);
    if (trial % 2 == 0) c.set(V::x(2), V::x(2), 1);
    for (int n0 = 0; n0 <= 7; ++n0) {
      GaussianMonomial lhs{V::d(1)};
      lhs.multiply(V::x(2), n0 + 1);
      GaussianMonomial xs;
      xs.multiply(V::x(2), n0);
      CHECK(isserlis_moment(lhs, c) == (n0 + 1) * c(V::d(1), V::x(2)) * isserlis_moment(xs, c));
    }
  }
}

TEST_CASE("g_minus examples") {
  std::mt19937_64 rng(5);
  const auto c = CovarianceSpec::random_symmetric(2, rng);
  CHECK(g_minus(Forest(sym::xi(1)), c) == 0);
  CHECK(g_minus(Forest(sym::xi_integ_xi_pow(1, 2, 1)), c) == c(V::d(1), V::x(2)));
  CHECK(g_minus(Forest(sym::xi_integ_xi_pow(2, 2, 1)), c) == c(V::d(2), V::x(2)));
  CHECK(g_minus(Forest(sym::xi_integ_pow(1, 1)), c) == 0);
  CHECK(g_minus(Forest(std::vector<TypedTree>{sym::xi_integ_pow(1, 1), sym::integ()}), c) == 0);
  CHECK(g_minus(Forest{}, c) == 1);
  CHECK(g_minus(Forest(sym::integ_xi_pow(1, 2)), c) == c(V::x(1), V::x(1)));
  CHECK_THROWS_AS(g_minus(Forest(sym::integ_of(sym::integ())), c), DomainError);
}

TEST_CASE("g_minus is multiplicative") {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 200; ++k) {
    const auto c = CovarianceSpec::random_symmetric(2, rng);
    const Forest a = testing::random_forest(rng, 2, 3, 8), b = testing::random_forest(rng, 2, 3, 8);
    CHECK(g_minus(forest_product(a, b), c) == g_minus(a, c) * g_minus(b, c));
  }
}

TEST_CASE("g_antipode examples") {
  const StructureSpec spec = testing::generic_spec(2, 4);
  TwistedAntipode a(spec);
  std::mt19937_64 rng(7);
  const auto c = CovarianceSpec::random_symmetric(2, rng);
  CHECK(g_antipode(Forest{}, a, c) == 1);
  CHECK(g_antipode(Forest(sym::xi(1)), a, c) == 0);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      CHECK(g_antipode(Forest(sym::xi_integ_xi_pow(i, j, 1)), a, c) == -c(V::d(i), V::x(j)));
}

TEST_CASE("g_antipode vanishes on Xi_i I(Xi_j)^n for n >= 2") {
  const StructureSpec spec = testing::generic_spec(2, 8);
  TwistedAntipode a(spec);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = CovarianceSpec::random_symmetric(2, rng);
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        for (int n = 2; n <= 8; ++n) CHECK(g_antipode(Forest(sym::xi_integ_xi_pow(i, j, n)), a, c) == 0);
  }
}

TEST_CASE("convolution inverse") {
  const StructureSpec spec({rational(1, 9), rational(1, 7)}, 6);
  TwistedAntipode a(spec);
  std::mt19937_64 rng(9);
  int tested = 0;
  for (int k = 0; k < 400 && tested < 60; ++k) {
    const Forest f = testing::random_forest(rng, 2, 4, 8);
    if (f.is_unit() || !survives_minus(f, spec)) continue;
    ++tested;
    const auto c = CovarianceSpec::random_symmetric(2, rng);
    Rational total = 0;
    for (const auto& [kk, p] : delta_minus_ex(f, spec))
      total += p.coefficient * g_antipode(p.left, a, c) * g_minus(p.right, c);
    CHECK(total == 0);
  }
  CHECK(tested >= 30);
}

TEST_CASE("covariance text") {
  std::mt19937_64 rng(10);
  const auto c = CovarianceSpec::random_symmetric(2, rng);
  const auto back = CovarianceSpec::parse("# header\n" + c.to_text());
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      CHECK(back(V::d(a), V::x(b)) == c(V::d(a), V::x(b)));
      CHECK(back(V::x(a), V::x(b)) == c(V::x(a), V::x(b)));
    }
  CHECK_THROWS_AS(CovarianceSpec::parse("1 2\n3 4\n"), ConfigError);
  CHECK_THROWS_AS(CovarianceSpec::parse("1 2 3\n2 1 0\n3 0 1\n"), ConfigError);
  CHECK_THROWS_AS(CovarianceSpec::parse("1 2\n2\n"), ConfigError);
  CHECK_THROWS_AS(CovarianceSpec::parse(""), ConfigError);
  CHECK(CovarianceSpec::parse("1/2 -1/3\n-1/3 2\n")(V::d(1), V::x(1)) == rational(-1, 3));
}

TEST_CASE("monte carlo oracle") {
  std::mt19937_64 rng(12);
  const auto c = CovarianceSpec::random_psd(2, rng);
  const auto zero = mc_moment_oracle(GaussianMonomial{V::x(1)}, c, 100000, 1);
  CHECK(std::abs(zero.estimate) <= 5 * zero.std_error);

  CovarianceSpec unit(1);
  unit.set(V::x(1), V::x(1), 1);
  unit.set(V::d(1), V::d(1), 1);
  const auto var = mc_moment_oracle(GaussianMonomial{V::x(1), V::x(1)}, unit, 100000, 2);
  CHECK(var.estimate == doctest::Approx(1.0).epsilon(0.02));

  int hits = 0;
  const int trials = 40;
  for (int k = 0; k < trials; ++k) {
    const auto cov = CovarianceSpec::random_psd(2, rng);
    const auto m = random_monomial(rng, 2, 6);
    const auto est = mc_moment_oracle(m, cov, 200000, 100 + k);
    const double exact = isserlis_moment(m, cov).get_d();
    if (std::abs(est.estimate - exact) <= 5 * est.std_error + 1e-12) ++hits;
  }
  CHECK(hits >= trials - 1);

  const auto again = mc_moment_oracle(GaussianMonomial{V::x(1), V::d(2)}, c, 5000, 9);
  CHECK(again.estimate == mc_moment_oracle(GaussianMonomial{V::x(1), V::d(2)}, c, 5000, 9).estimate);
}

TEST_CASE("monte carlo oracle rejects indefinite covariance") {
  CovarianceSpec c(1);
  c.set(V::d(1), V::d(1), 1);
  c.set(V::x(1), V::x(1), 1);
  c.set(V::d(1), V::x(1), 2);
  CHECK_THROWS_AS(mc_moment_oracle(GaussianMonomial{V::x(1), V::x(1)}, c, 100, 1), DomainError);
}
