// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "generators.hpp"
#include "tropreal/errors.hpp"
#include "tropreal/qmax.hpp"

using namespace tropreal;

namespace {
QMax q(long p, long r = 1) { return QMax(Rational(p, r)); }
}  // namespace

TEST_SUITE("qmax") {
  TEST_CASE("oplus") {
    CHECK(oplus(3, 5) == QMax(5));
    CHECK(oplus(QMax::bottom(), q(-7)) == q(-7));
    CHECK(oplus(q(4), QMax::bottom()) == q(4));
    CHECK(oplus(q(-1, 2), q(-1, 3)) == q(-1, 3));
  }

  TEST_CASE("otimes") {
    CHECK(otimes(3, 5) == QMax(8));
    CHECK(otimes(QMax::bottom(), 7).is_bottom());
    CHECK(otimes(q(1, 2), q(1, 3)) == q(5, 6));
  }

  TEST_CASE("leq") {
    CHECK(leq(QMax::bottom(), -1000));
    CHECK(leq(2, 2));
    CHECK(leq(q(1, 3), q(1, 2)));
    CHECK_FALSE(leq(q(1, 2), q(1, 3)));
    CHECK(leq(QMax::bottom(), QMax::bottom()));
  }

  TEST_CASE("power") {
    CHECK(power(3, 2) == QMax(6));
    CHECK(power(q(17), 0) == QMax::one());
    CHECK(power(QMax::bottom(), 0) == QMax::one());
    CHECK(power(QMax::bottom(), 3).is_bottom());
    CHECK(power(q(-1, 2), 3) == q(-3, 2));
  }

  TEST_CASE("canonical rationals") {
    const QMax x(Rational(4, -6));
    CHECK(x.value().get_num() == -2);
    CHECK(x.value().get_den() == 3);
    CHECK(x.to_string() == "-2/3");
  }

  TEST_CASE("text") {
    CHECK(QMax::parse("-inf").is_bottom());
    CHECK(QMax::parse("12") == q(12));
    CHECK(QMax::parse("-1/2") == q(-1, 2));
    CHECK(QMax::parse("6/4") == q(3, 2));
    CHECK(QMax::bottom().to_string() == "-inf");
    CHECK_THROWS_AS(QMax::parse("1/0"), ParseError);
    CHECK_THROWS_AS(QMax::parse("abc"), ParseError);
    CHECK_THROWS_AS(QMax::parse(""), ParseError);
  }

  TEST_CASE("semiring laws on random triples") {
    testing::Rng rng(11);
    for (int t = 0; t < 2000; ++t) {
      auto draw = [&] { return testing::chance(rng, 0.15) ? QMax::bottom() : testing::random_fraction(rng); };
      const QMax a = draw(), b = draw(), c = draw();
      CHECK(oplus(a, a) == a);
      CHECK(otimes(a, oplus(b, c)) == oplus(otimes(a, b), otimes(a, c)));
      CHECK(oplus(a, b) == oplus(b, a));
      CHECK(otimes(otimes(a, b), c) == otimes(a, otimes(b, c)));
      const int order = (a < b ? 1 : 0) + (a == b ? 1 : 0) + (b < a ? 1 : 0);
      CHECK(order == 1);
      CHECK(leq(a, b) == (oplus(a, b) == b));
      if (!c.is_bottom() && otimes(a, c) == otimes(b, c)) CHECK(a == b);
      CHECK(QMax::parse(a.to_string()) == a);
    }
  }
}
