#include <doctest.h>

#include <numeric>
#include <random>

#include "bphz/errors.hpp"
#include "bphz/symbol_text.hpp"
#include "bphz/symbols.hpp"
#include "support.hpp"

using namespace bphz;

namespace {

const EdgeType kI = EdgeType::integration();

TypedTree star(int k) {
  std::vector<int> parent{-1};
  std::vector<EdgeType> type{kI};
  for (int i = 0; i < k; ++i) {
    parent.push_back(0);
    type.push_back(kI);
  }
  return TypedTree::from_parent_map(parent, type);
}

}  // namespace

TEST_CASE("tree product unit and two-branch tree") {
  const auto t = sym::xi_integ_xi_pow(1, 2, 1);
  CHECK(tree_product(sym::unit(), t) == t);
  CHECK(tree_product(t, sym::unit()) == t);
  CHECK(tree_product(sym::xi(1), sym::integ_of(sym::xi(2))) == t);
  CHECK(t.edge_count() == 3);
  CHECK(t.root_branches().size() == 2);
}

TEST_CASE("tree product of the star and the six-node tree") {
  const TypedTree t1 = star(3);
  // root -> a, b; a -> three leaves
  const TypedTree t2 = TypedTree::from_parent_map({-1, 0, 0, 1, 1, 1}, std::vector<EdgeType>(6, kI));
  const TypedTree p = tree_product(t1, t2);
  CHECK(p.node_count() == 9);
  CHECK(p.children(0).size() == 5);
  const TypedTree expected = TypedTree::from_parent_map({-1, 0, 0, 0, 0, 0, 4, 4, 4}, std::vector<EdgeType>(9, kI));
  CHECK(p == expected);
}

TEST_CASE("tree product is associative") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto a = testing::random_symbol(rng, 3, 3), b = testing::random_symbol(rng, 3, 3),
               c = testing::random_symbol(rng, 3, 3);
    CHECK(tree_product(tree_product(a, b), c) == tree_product(a, tree_product(b, c)));
  }
}

TEST_CASE("forest product") {
  const Forest x1(sym::xi(1)), x2(sym::xi(2));
  CHECK(forest_product(Forest{}, x1) == x1);
  CHECK(forest_product(x1, x2) == forest_product(x2, x1));
  CHECK(forest_product(x1, x2).key() == forest_product(x2, x1).key());
  const Forest three = forest_product(forest_product(x1, x1), x1);
  CHECK(three == Forest(std::vector<TypedTree>(3, sym::xi(1))));
  CHECK(three.trees().size() == 3);
  CHECK(Forest(sym::unit()).is_unit());

  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const auto a = testing::random_forest(rng, 2, 3, 12), b = testing::random_forest(rng, 2, 3, 12),
               c = testing::random_forest(rng, 2, 3, 12);
    CHECK(forest_product(forest_product(a, b), c) == forest_product(a, forest_product(b, c)));
    CHECK(forest_product(a, b) == forest_product(b, a));
  }
}

TEST_CASE("canonical keys") {
  CHECK(sym::xi(1).key() != sym::xi(2).key());
  const EdgeType n1 = EdgeType::noise_of(1), n2 = EdgeType::noise_of(2);
  // Xi_1 I(Xi_2) built with both child orders at the root
  const auto a = TypedTree::from_parent_map({-1, 0, 0, 2}, {kI, n1, kI, n2});
  const auto b = TypedTree::from_parent_map({-1, 0, 1, 0}, {kI, kI, n2, n1});
  CHECK(a == b);
  CHECK(a.key() == sym::xi_integ_xi_pow(1, 2, 1).key());
  CHECK(sym::unit().key() == "()");
}

TEST_CASE("from_parent_map rejects malformed maps") {
  CHECK_THROWS_AS(TypedTree::from_parent_map({-1, -1}, {kI, kI}), std::invalid_argument);
  CHECK_THROWS_AS(TypedTree::from_parent_map({1, 0}, {kI, kI}), std::invalid_argument);
  CHECK_THROWS_AS(TypedTree::from_parent_map({-1, 2, 1}, {kI, kI, kI}), std::invalid_argument);
}

TEST_CASE("extractions of Xi_1 I(Xi_2)") {
  const auto t = sym::xi_integ_xi_pow(1, 2, 1);
  const auto ex = subforest_extractions(t);
  auto find = [&](const Forest& a) -> std::vector<Extraction> {
    std::vector<Extraction> out;
    for (const auto& e : ex)
      if (e.extracted == a) out.push_back(e);
    return out;
  };
  const auto one = find(Forest(sym::xi(1)));
  REQUIRE(one.size() == 1);
  CHECK(one[0].contracted == sym::integ_of(sym::xi(2)));
  const auto two = find(Forest({sym::xi(1), sym::xi(2)}));
  REQUIRE(two.size() == 1);
  CHECK(two[0].contracted == sym::integ());
  const auto none = find(Forest{});
  REQUIRE(none.size() == 1);
  CHECK(none[0].contracted == t);
  const auto all = find(Forest(t));
  REQUIRE(all.size() == 1);
  CHECK(all[0].contracted.is_unit());
}

TEST_CASE("extractions of Xi_1 I(Xi_1)") {
  const auto t = sym::xi_integ_xi_pow(1, 1, 1);
  const auto ex = subforest_extractions(t);
  long long total = 0;
  for (const auto& e : ex) total += e.multiplicity;
  CHECK(total == 8);
  int single = 0;
  for (const auto& e : ex)
    if (e.extracted == Forest(sym::xi(1))) {
      ++single;
      CHECK(e.multiplicity == 1);
      CHECK((e.contracted == sym::integ_of(sym::xi(1)) || e.contracted == sym::xi_integ_pow(1, 1)));
    }
  CHECK(single == 2);
}

TEST_CASE("extraction multiplicities and edge counts") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 60; ++k) {
    const auto t = testing::random_symbol(rng, 2, 4);
    const auto ex = subforest_extractions(t);
    long long total = 0;
    for (const auto& e : ex) {
      total += e.multiplicity;
      CHECK(e.multiplicity > 0);
      CHECK(e.extracted.edge_count() + e.contracted.edge_count() == t.edge_count());
    }
    CHECK(total == (1LL << t.edge_count()));
  }
}

TEST_CASE("parse and format") {
  const auto spec = testing::generic_spec(2, 8);
  const auto x = parse_symbol("Xi_1*I(Xi_2)^3", spec);
  REQUIRE(x.size() == 1);
  CHECK(x.begin()->second.forest.as_tree() == sym::xi_integ_xi_pow(1, 2, 3));
  const auto one = parse_symbol("1", spec);
  REQUIRE(one.size() == 1);
  CHECK(one.begin()->second.forest.is_unit());
  const auto pair = parse_symbol("Xi_1 . Xi_1", spec);
  CHECK(pair.begin()->second.forest.trees().size() == 2);
  CHECK_THROWS_AS(parse_symbol("Xi_1^2", spec), DomainError);
  CHECK_THROWS_AS(parse_symbol("Xi_3", spec), ParseError);
  CHECK(format_symbol(parse_symbol("2*Xi_1 . Xi_2 - 1/2*I^3 + 3", spec)) ==
        format_symbol(parse_symbol("3 + 2*Xi_2 . Xi_1 - 1/2*I^3", spec)));
  CHECK(format_symbol(LinComb<Rational>{}) == "0");
}

TEST_CASE("parse errors carry a position") {
  const auto spec = testing::generic_spec(2, 8);
  try {
    parse_symbol("Xi_1 * * I", spec);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 7);
  }
  CHECK_THROWS_AS(parse_symbol("I(Xi_1", spec), ParseError);
  CHECK_THROWS_AS(parse_symbol("", spec), ParseError);
  CHECK_THROWS_AS(parse_symbol("Xi_0", spec), ParseError);
}

TEST_CASE("format then parse is the identity") {
  const auto spec = testing::generic_spec(3, 4);
  for (const auto& t : spec.basis()) {
    const LinComb<Rational> x(Forest(t), Rational(1));
    CHECK(parse_symbol(format_symbol(x), spec) == x);
  }
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  for (int k = 0; k < 300; ++k) {
    LinComb<Rational> x;
    for (int j = 0; j < 3; ++j) {
      const auto f = testing::random_forest(rng, 3, 4, 12);
      const int p = num(rng);
      x.add(f, testing::rational(p, den(rng)));
    }
    CHECK(parse_symbol(format_symbol(x), spec) == x);
  }
}
