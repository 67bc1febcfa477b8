#include <doctest.h>

#include <random>
#include <set>

#include "bphz/errors.hpp"
#include "bphz/structure.hpp"
#include "bphz/symbols.hpp"
#include "support.hpp"

using namespace bphz;
using testing::rational;

TEST_CASE("degrees") {
  const StructureSpec spec({rational(1, 3), rational(2, 5)});
  CHECK(spec.degree(sym::unit()) == 0);
  CHECK(spec.degree(Forest{}) == 0);
  CHECK(spec.degree(sym::xi_integ_xi_pow(1, 2, 1)) == rational(1, 3) + rational(2, 5) - 1);
  CHECK(spec.degree(sym::xi(2)) == rational(2, 5) - 1);
  CHECK(spec.degree(sym::integ()) == 1);
  CHECK(spec.degree(sym::integ_xi_pow(1, 3)) == 3 * rational(1, 3));
}

TEST_CASE("degree is additive") {
  const StructureSpec spec({rational(1, 7), rational(3, 8)});
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const auto a = testing::random_symbol(rng, 2, 3), b = testing::random_symbol(rng, 2, 3);
    CHECK(spec.degree(tree_product(a, b)) == spec.degree(a) + spec.degree(b));
    CHECK(spec.degree(forest_product(Forest(a), Forest(b))) == spec.degree(a) + spec.degree(b));
  }
}

TEST_CASE("alpha validation") {
  CHECK_THROWS_AS(StructureSpec({Rational(0)}), ConfigError);
  CHECK_THROWS_AS(StructureSpec({Rational(1)}), ConfigError);
  CHECK_THROWS_AS(StructureSpec({}), ConfigError);
  CHECK_THROWS_AS(StructureSpec({rational(1, 2)}, 0), ConfigError);
}

TEST_CASE("project_minus") {
  const StructureSpec spec({rational(1, 4), rational(1, 4)});
  const Forest x1i(std::vector<TypedTree>{sym::xi(1), sym::integ_of(sym::xi(1))});
  const Forest x12(std::vector<TypedTree>{sym::xi(1), sym::xi(2)});
  CHECK(project_minus(LinComb<Rational>(x1i, Rational(1)), spec).is_zero());
  CHECK(project_minus(LinComb<Rational>(x12, Rational(1)), spec) == LinComb<Rational>(x12, Rational(1)));
  CHECK(project_minus(LinComb<Rational>(Forest{}, Rational(1)), spec) == LinComb<Rational>(Forest{}, Rational(1)));
  for (const auto& t : spec.basis())
    if (!t.is_unit() && spec.degree(t) < 0)
      CHECK(project_minus(LinComb<Rational>(Forest(t), Rational(1)), spec) == LinComb<Rational>(Forest(t), Rational(1)));
}

TEST_CASE("project_plus") {
  const StructureSpec spec({rational(1, 4), rational(1, 3)}, 4);
  for (int n = 1; n <= 4; ++n) {
    CHECK(project_plus(LinComb<Rational>(Forest(sym::xi_integ_xi_pow(1, 2, n)), Rational(1)), spec).is_zero());
    const LinComb<Rational> c(Forest(sym::integ_xi_pow(2, n)), Rational(1));
    CHECK(project_plus(c, spec) == c);
  }
  const LinComb<Rational> one(Forest{}, Rational(1));
  CHECK(project_plus(one, spec) == one);
}

TEST_CASE("surviving basis of project_plus") {
  const StructureSpec spec({rational(1, 5), rational(2, 7)}, 3);
  std::set<std::string> kept;
  for (const auto& t : spec.basis())
    if (survives_plus(t, spec)) kept.insert(t.key());
  std::set<std::string> expected{sym::unit().key()};
  for (int n = 1; n <= 3; ++n) {
    expected.insert(tree_power(sym::integ(), n).key());
    for (int i = 1; i <= 2; ++i) expected.insert(sym::integ_xi_pow(i, n).key());
  }
  CHECK(kept == expected);
}

TEST_CASE("projections are idempotent and linear") {
  const StructureSpec spec({rational(1, 5), rational(2, 7)}, 3);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    LinComb<Rational> x, y;
    for (int j = 0; j < 4; ++j) {
      x.add(testing::random_forest(rng, 2, 3, 10), Rational(j + 1));
      y.add(testing::random_forest(rng, 2, 3, 10), Rational(-j));
    }
    CHECK(project_minus(project_minus(x, spec), spec) == project_minus(x, spec));
    LinComb<Rational> sum = x;
    sum += y * Rational(3);
    LinComb<Rational> parts = project_minus(x, spec);
    parts += project_minus(y, spec) * Rational(3);
    CHECK(project_minus(sum, spec) == parts);

    LinComb<Rational> tx, ty;
    tx.add(Forest(testing::random_symbol(rng, 2, 3)), Rational(2));
    tx.add(Forest(testing::random_symbol(rng, 2, 3)), Rational(1));
    ty.add(Forest(testing::random_symbol(rng, 2, 3)), Rational(5));
    CHECK(project_plus(project_plus(tx, spec), spec) == project_plus(tx, spec));
    LinComb<Rational> tsum = tx;
    tsum += ty;
    LinComb<Rational> tparts = project_plus(tx, spec);
    tparts += project_plus(ty, spec);
    CHECK(project_plus(tsum, spec) == tparts);
  }
}

TEST_CASE("rough volatility structure") {
  CHECK(rough_vol_truncation(rational(2, 5), rational(1, 100)) == 1);
  CHECK(rough_vol_truncation(rational(1, 10), rational(1, 100)) == 5);
  const Rational h = rational(3, 10), kappa = rational(1, 100);
  const auto spec = rough_vol_spec(h, kappa);
  CHECK(spec.d() == 2);
  CHECK(spec.truncation() == rough_vol_truncation(h, kappa));
  for (int m = 0; m <= spec.truncation(); ++m) {
    CHECK(spec.degree(sym::xi_integ_xi_pow(1, 2, m)) == rational(-1, 2) - kappa + m * (h - kappa));
    if (m > 0) CHECK(spec.degree(sym::integ_xi_pow(2, m)) == m * (h - kappa));
  }
  CHECK(spec.basis().size() == static_cast<std::size_t>(2 * spec.truncation() + 2));
  CHECK_FALSE(spec.in_symbol_set(sym::xi(2)));
  CHECK(spec.in_symbol_set(sym::xi(1)));
  CHECK_THROWS_AS(rough_vol_spec(rational(1, 10), rational(1, 10)), ConfigError);
  CHECK_THROWS_AS(rough_vol_spec(rational(1, 2), rational(1, 100)), ConfigError);
  CHECK_THROWS_AS(rough_vol_spec(rational(1, 3), Rational(0)), ConfigError);
}

TEST_CASE("config round trip") {
  const StructureSpec spec({rational(1, 5), rational(2, 7), rational(1, 3)}, 5);
  const auto back = StructureSpec::from_config(KeyValueConfig::parse(spec.to_config().to_text()));
  CHECK(back.d() == 3);
  CHECK(back.truncation() == 5);
  CHECK(back.degrees().alpha == spec.degrees().alpha);
  const auto rv = StructureSpec::from_config(KeyValueConfig::parse("H = 0.3\nkappa = 0.01\n"));
  REQUIRE(rv.rough_vol());
  CHECK(rv.rough_vol()->hurst == rational(3, 10));
  CHECK_THROWS_AS(StructureSpec::from_config(KeyValueConfig::parse("d = 2\nalpha_1 = 1/2\n")), ConfigError);
  CHECK_THROWS_AS(StructureSpec::from_config(KeyValueConfig::parse("d = x\n")), ConfigError);
}

TEST_CASE("decimal rationals with leading zeros") {
  CHECK(parse_rational("0.29") == rational(29, 100));
  CHECK(parse_rational("0089") == 89);
  CHECK(parse_rational("-0.0625") == rational(-1, 16));
  CHECK(parse_rational("2^-5") == rational(1, 32));
  CHECK(parse_rational("1e-3") == rational(1, 1000));
  CHECK_THROWS_AS(parse_rational("0x10"), ConfigError);
}
