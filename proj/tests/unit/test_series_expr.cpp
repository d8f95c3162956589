// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "generators.hpp"
#include "tropreal/errors.hpp"
#include "tropreal/series_expr.hpp"

using namespace tropreal;

namespace {

const std::vector<std::string> kUV{"u1", "v1", "u2", "v2"};
const std::vector<std::string> kABC{"a", "b", "c"};

RatExpr mon(long coef, std::uint64_t degree) {
  return RatExpr::monomial(SymPoly::constant(0, QMax(coef)), degree);
}

std::vector<QMax> values(std::initializer_list<long> xs) {
  std::vector<QMax> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Symbolic expression over (a, b, c) whose starred children have no X^0 term.
RatExpr random_symbolic(testing::Rng& rng, int depth, bool positive = false) {
  if (depth <= 0 || testing::chance(rng, 0.25)) {
    const long lo = positive ? 1 : 0;
    SymPoly c = testing::random_poly(rng, 3, 1);
    if (c.is_zero() && testing::chance(rng, 0.7)) c = SymPoly::variable(3, testing::uniform(rng, 0, 2));
    return RatExpr::monomial(c, static_cast<std::uint64_t>(testing::uniform(rng, lo, 2)));
  }
  switch (testing::uniform(rng, 0, 2)) {
    case 0:
      return RatExpr::sum(random_symbolic(rng, depth - 1, positive), random_symbolic(rng, depth - 1, positive));
    case 1:
      return RatExpr::product(random_symbolic(rng, depth - 1, positive), random_symbolic(rng, depth - 1));
    default: {
      const RatExpr s = RatExpr::star(random_symbolic(rng, depth - 1, true));
      if (!positive) return s;
      return RatExpr::product(RatExpr::monomial(SymPoly::variable(3, 0), 1), s);
    }
  }
}

}  // namespace

TEST_SUITE("series-expr") {
  TEST_CASE("parse builds the expected trees") {
    const RatExpr s = parse_expr("0 + X (1 X)*");
    const RatExpr expected = RatExpr::sum(mon(0, 0), RatExpr::product(mon(0, 1), RatExpr::star(mon(1, 1))));
    CHECK(s == expected);

    const RatExpr zero = parse_expr("-inf");
    REQUIRE(zero.kind() == RatExpr::Kind::Monomial);
    CHECK(zero.degree() == 0);
    CHECK(zero.coef().is_zero());

    const RatExpr t = parse_expr("u1 (v1 X)* + u2 (v2 X^2)*", kUV);
    CHECK(t.arity() == 4);
    REQUIRE(t.kind() == RatExpr::Kind::Sum);
    const RatExpr& first = t.left();
    REQUIRE(first.kind() == RatExpr::Kind::Product);
    CHECK(first.left().coef() == SymPoly::variable(4, 0));
    REQUIRE(first.right().kind() == RatExpr::Kind::Star);
    CHECK(first.right().child().coef() == SymPoly::variable(4, 1));
    CHECK(first.right().child().degree() == 1);
    const RatExpr& second = t.right().right().child();
    CHECK(second.degree() == 2);
    CHECK(second.coef() == SymPoly::variable(4, 3));
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_expr("0 + "), ParseError);
    CHECK_THROWS_AS(parse_expr("(1 X"), ParseError);
    CHECK_THROWS_AS(parse_expr("u X"), ParseError);
    CHECK_THROWS_AS(parse_expr("1 X ^"), ParseError);
    try {
      parse_expr("1 X + ) ");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.position() == 6);
    }
  }

  TEST_CASE("coefficients") {
    CHECK(concrete_coefficients(parse_expr("0 + X (1 X)*"), 3) == values({0, 0, 1, 2}));
    for (auto k : {0u, 4u, 17u}) CHECK(coefficient(parse_expr("-inf"), k).is_zero());
    CHECK(concrete_coefficients(parse_expr("(X^2)* + 1 X (1 X^2)*"), 5) == values({0, 1, 0, 2, 0, 3}));
    CHECK(concrete_coefficients(parse_expr("(1/2 X)* (-1/3 X^2)"), 3).back() == QMax(Rational(1, 6)));
    CHECK(concrete_coefficients(parse_expr("(X + 1 X)^2"), 2) == std::vector<QMax>{QMax::bottom(), QMax::bottom(), QMax(2)});
  }

  TEST_CASE("star admissibility") {
    CHECK_THROWS_AS(concrete_coefficients(parse_expr("(0 + X)*"), 3), StarOfUnit);
    CHECK_THROWS_AS(concrete_coefficients(parse_expr("((1 X)*)*"), 3), StarOfUnit);
    CHECK_NOTHROW(concrete_coefficients(parse_expr("(-inf + X)*"), 3));
    CHECK_THROWS_AS(coefficients(parse_expr("(a + X)*", kABC), 2), StarOfUnit);
    CHECK_NOTHROW(check_star_admissible(parse_expr("(a X + b X^2)*", kABC)));
  }

  TEST_CASE("evaluate_at") {
    const RatExpr t = parse_expr("u1 (v1 X)* + u2 (v2 X^2)*", kUV);
    const RatExpr e = evaluate_at(t, values({-1, 1, 0, 1}));
    CHECK(e.is_concrete());
    CHECK(e == parse_expr("-1 (1 X)* + 0 (1 X^2)*"));
    std::vector<QMax> bottoms(4, QMax::bottom());
    for (const auto& c : concrete_coefficients(evaluate_at(t, bottoms), 8)) CHECK(c.is_bottom());
    const std::vector<std::string> uv{"u1", "v1"};
    const RatExpr one = evaluate_at(parse_expr("u1 (v1 X)*", uv), values({0, 0}));
    CHECK(one == parse_expr("0 (0 X)*"));
    CHECK(concrete_coefficients(one, 6) == values({0, 0, 0, 0, 0, 0, 0}));
    CHECK_THROWS_AS(evaluate_at(t, values({1, 2})), ArityMismatch);
  }

  TEST_CASE("mixed arities are rejected") {
    CHECK_THROWS_AS(RatExpr::sum(mon(0, 0), RatExpr::zero(2)), ArityMismatch);
  }

  TEST_CASE("streams") {
    SeriesStream s(parse_expr("(X^2)* + 1 X (1 X^2)*"));
    CHECK(s.value(5) == QMax(3));
    CHECK(s.value(5) == s.value(5));
    CHECK(s.value(0) == QMax(0));
    SeriesStream g(0, [](std::uint64_t k) { return SymPoly::constant(0, QMax(static_cast<long>(k))); });
    CHECK(g.value(9) == QMax(9));
  }

  TEST_CASE("evaluation commutes with coefficient extraction") {
    testing::Rng rng(5);
    for (int t = 0; t < 200; ++t) {
      const RatExpr e = random_symbolic(rng, 3);
      const auto d = testing::random_point(rng, 3, -3, 3, 0.15);
      const auto sym = coefficients(e, 30);
      const auto conc = concrete_coefficients(evaluate_at(e, d), 30);
      for (std::size_t k = 0; k <= 30; ++k) CHECK(evaluate(sym[k], d) == conc[k]);
    }
  }

  TEST_CASE("printing round-trips") {
    testing::Rng rng(6);
    for (int t = 0; t < 500; ++t) {
      const RatExpr e = testing::chance(rng, 0.5) ? random_symbolic(rng, 5) : testing::random_concrete(rng, 5);
      const auto names = e.is_concrete() ? std::span<const std::string>{} : std::span<const std::string>(kABC);
      const std::string text = to_string(e, names);
      const RatExpr back = parse_expr(text, names);
      CHECK_MESSAGE(to_string(back, names) == text, text);
      CHECK(coefficients(back, 12) == coefficients(e, 12));
    }
  }

  TEST_CASE("coefficients are monotone in the monomial coefficients") {
    testing::Rng rng(8);
    for (int t = 0; t < 200; ++t) {
      const RatExpr e = random_symbolic(rng, 4);
      auto lo = testing::random_point(rng, 3, -3, 3, 0.2);
      auto hi = lo;
      const auto i = static_cast<std::size_t>(testing::uniform(rng, 0, 2));
      hi[i] = hi[i].is_bottom() ? QMax(-3) : otimes(hi[i], QMax(testing::uniform(rng, 0, 2)));
      const auto a = concrete_coefficients(evaluate_at(e, lo), 15);
      const auto b = concrete_coefficients(evaluate_at(e, hi), 15);
      for (std::size_t k = 0; k <= 15; ++k) CHECK(leq(a[k], b[k]));
    }
  }
}
