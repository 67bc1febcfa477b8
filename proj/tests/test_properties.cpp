#include <doctest.h>

#include <random>
#include <thread>

#include "bphz/coalgebra.hpp"
#include "bphz/gaussian.hpp"
#include "bphz/model.hpp"
#include "bphz/symbol_text.hpp"
#include "support.hpp"

using namespace bphz;
using testing::rational;

namespace {

LinComb<Rational> random_comb(std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  LinComb<Rational> x;
  for (int k = 0; k < terms; ++k) x.add(testing::random_forest(rng, 2, 3, 7), Rational(coeff(rng)));
  return x;
}

}  // namespace

TEST_CASE("delta_minus is linear") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 50; ++k) {
    const auto a = random_comb(rng, 3), b = random_comb(rng, 3);
    PairComb<Rational> sum = delta_minus(a);
    sum += delta_minus(b);
    CHECK(delta_minus(a + b) == sum);
  }
}

TEST_CASE("delta_minus_ex is the projected delta_minus") {
  const StructureSpec spec({rational(1, 6), rational(1, 5)}, 4);
  std::mt19937_64 rng(32);
  for (int k = 0; k < 100; ++k) {
    const Forest f = testing::random_forest(rng, 2, 3, 8);
    PairComb<Rational> expected;
    for (const auto& [kk, p] : delta_minus(f))
      if (survives_minus(p.left, spec)) expected.add(p.left, p.right, p.coefficient);
    CHECK(delta_minus_ex(f, spec) == expected);
  }
}

TEST_CASE("parsed symbols round trip through the coproduct text") {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 50; ++k) {
    const Forest f = testing::random_forest(rng, 2, 2, 6);
    const auto d = delta_minus(f);
    const std::string text = format_pairs(d);
    CHECK(!text.empty());
    CHECK(parse_symbol_lenient(format_forest(f)) == LinComb<Rational>(f, Rational(1)));
  }
}

TEST_CASE("renormalization only adds terms of higher degree") {
  const StructureSpec spec({rational(1, 7), rational(2, 9)}, 5);
  TwistedAntipode a(spec);
  std::mt19937_64 rng(34);
  for (int k = 0; k < 20; ++k) {
    const auto c = CovarianceSpec::random_symmetric(2, rng);
    for (const auto& tau : spec.basis()) {
      const auto x = renormalized_expansion<Rational>(tau, a, c);
      CHECK(x.coefficient(Forest(tau)) == 1);
      for (const auto& [kk, t] : x)
        if (!(t.forest == Forest(tau))) CHECK(spec.degree(t.forest) > spec.degree(tau));
    }
  }
}

TEST_CASE("closed form holds across rough volatility parameters") {
  std::mt19937_64 rng(35);
  std::uniform_int_distribution<int> hk(2, 49);
  int tested = 0;
  for (int k = 0; k < 40; ++k) {
    const Rational h = rational(hk(rng), 100);
    const Rational kappa = h * rational(1, 1 + hk(rng));
    const auto spec = rough_vol_spec(h, kappa);
    if (spec.truncation() > 8) continue;
    ++tested;
    const auto c = CovarianceSpec::random_symmetric(2, rng);
    const auto report = check_bphz_plain(spec, c, spec.truncation());
    CHECK_MESSAGE(report.passed, "H = " << to_string(h) << ", kappa = " << to_string(kappa));
    for (int n = 1; n <= spec.truncation(); ++n) {
      const std::string name = format_tree(sym::xi_integ_xi_pow(1, 2, n)) + " ";
      for (const auto& skipped : report.skipped) CHECK(skipped.rfind(name, 0) != 0);
    }
  }
  CHECK(tested > 10);
}

TEST_CASE("concurrent antipode calls agree with a serial run") {
  const StructureSpec spec = testing::generic_spec(2, 6);
  std::vector<TypedTree> trees;
  for (const auto& tau : spec.basis())
    if (!tau.is_unit() && spec.degree(tau) < 0) trees.push_back(tau);

  TwistedAntipode shared(spec);
  std::vector<std::vector<LinComb<Rational>>> results(4);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < results.size(); ++w)
    workers.emplace_back([&, w] {
      for (std::size_t k = 0; k < trees.size(); ++k) {
        const std::size_t idx = (k + w * 3) % trees.size();
        results[w].push_back(shared(trees[idx]));
      }
    });
  for (auto& t : workers) t.join();

  TwistedAntipode serial(spec);
  for (std::size_t w = 0; w < results.size(); ++w)
    for (std::size_t k = 0; k < trees.size(); ++k)
      CHECK(results[w][k] == serial(trees[(k + w * 3) % trees.size()]));
}

TEST_CASE("renormalized model is consistent under recentring") {
  const StructureSpec spec = testing::generic_spec(2, 4);
  TwistedAntipode a(spec);
  std::mt19937_64 rng(36);
  std::normal_distribution<double> gauss;
  SamplePath p;
  p.dt = 0.01;
  p.xi.assign(2, std::vector<double>(64));
  p.xi_dot.assign(2, std::vector<double>(64));
  for (int i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 64; ++k) {
      p.xi[static_cast<std::size_t>(i)][k] = gauss(rng);
      p.xi_dot[static_cast<std::size_t>(i)][k] = gauss(rng);
    }
  const auto c = CovarianceSpec::random_symmetric(2, rng);
  const std::size_t s = 10, t = 50;
  const auto g = eval_gamma(t, s, p);
  for (const auto& tau : spec.basis()) {
    // Gamma_hat = Gamma, so Pi_hat_s tau = Pi_hat_t (Gamma_ts tau).
    const auto lhs = eval_pi_bphz(s, tau, p, a, c).values;
    std::vector<double> rhs(p.size(), 0.0);
    for (const auto& [k, term] : gamma_direct(tau, g)) {
      const auto v = eval_pi_bphz(t, term.forest.as_tree(), p, a, c).values;
      for (std::size_t r = 0; r < rhs.size(); ++r) rhs[r] += term.coefficient * v[r];
    }
    for (std::size_t r = 0; r < rhs.size(); ++r) CHECK(lhs[r] == doctest::Approx(rhs[r]).epsilon(1e-9));
  }
}
