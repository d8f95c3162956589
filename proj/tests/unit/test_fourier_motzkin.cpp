// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "generators.hpp"
#include "tropreal/errors.hpp"
#include "tropreal/fourier_motzkin.hpp"

using namespace tropreal;

namespace {

LinearRow row(std::initializer_list<long> a, long b, bool strict = false) {
  LinearRow r;
  for (long x : a) r.a.emplace_back(x);
  r.b = b;
  r.strict = strict;
  return r;
}

bool satisfies(const std::vector<LinearRow>& rows, const std::vector<Rational>& x) {
  for (const auto& r : rows) {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += r.a[i] * x[i];
    if (r.strict ? !(s > r.b) : s < r.b) return false;
  }
  return true;
}

std::vector<LinearRow> random_rows(testing::Rng& rng, std::size_t n, std::size_t m, long scale) {
  std::vector<LinearRow> rows;
  for (std::size_t i = 0; i < m; ++i) {
    LinearRow r;
    for (std::size_t j = 0; j < n; ++j) r.a.emplace_back(testing::uniform(rng, -scale, scale));
    r.b = Rational(testing::uniform(rng, -3 * scale, 3 * scale), testing::uniform(rng, 1, 4));
    r.strict = testing::chance(rng, 0.2);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

TEST_SUITE("fourier-motzkin") {
  TEST_CASE("small systems") {
    // x ≥ 1, -x ≥ 0 is empty.
    CHECK_FALSE(fm_feasible(1, {row({1}, 1), row({-1}, 0)}));
    // x ≥ 0, -x ≥ 0 gives x = 0.
    auto x = fm_solve(1, {row({1}, 0), row({-1}, 0)});
    REQUIRE(x);
    CHECK((*x)[0] == 0);
    // x > 0, -x ≥ 0 is empty; x > 0, -x > -1 is not.
    CHECK_FALSE(fm_feasible(1, {row({1}, 0, true), row({-1}, 0)}));
    CHECK(fm_feasible(1, {row({1}, 0, true), row({-1}, -1, true)}));
    // Midpoint of [1, 3].
    x = fm_solve(1, {row({1}, 1), row({-1}, -3)});
    REQUIRE(x);
    CHECK((*x)[0] == 2);
    // One-sided and free variables.
    x = fm_solve(2, {row({1, 0}, 5)});
    REQUIRE(x);
    CHECK((*x)[0] == 5);
    CHECK((*x)[1] == 0);
    // x + y ≥ 2, x - y ≥ 0, -x ≥ -1 forces x = y = 1.
    const std::vector<LinearRow> rows{row({1, 1}, 2), row({1, -1}, 0), row({-1, 0}, -1)};
    x = fm_solve(2, rows);
    REQUIRE(x);
    CHECK(satisfies(rows, *x));
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 1);
    // Constant rows.
    CHECK_FALSE(fm_feasible(2, {row({0, 0}, 1)}));
    CHECK(fm_feasible(2, {row({0, 0}, -1)}));
    CHECK_FALSE(fm_feasible(0, {row({}, 0, true)}));
  }

  TEST_CASE("bad input") {
    CHECK_THROWS(fm_solve(2, {row({1}, 0)}));
    const std::vector<std::size_t> order{0, 0};
    CHECK_THROWS(fm_solve(2, {row({1, 1}, 0)}, order));
  }

  TEST_CASE("verdicts do not depend on the elimination order") {
    testing::Rng rng(101);
    int feasible = 0;
    for (int t = 0; t < 400; ++t) {
      const auto n = static_cast<std::size_t>(testing::uniform(rng, 1, 4));
      const auto rows = random_rows(rng, n, static_cast<std::size_t>(testing::uniform(rng, 1, 8)), 3);
      const auto base = fm_solve(n, rows);
      if (base) CHECK(satisfies(rows, *base));
      feasible += base ? 1 : 0;
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      for (int s = 0; s < 4; ++s) {
        std::shuffle(order.begin(), order.end(), rng);
        const auto other = fm_solve(n, rows, order);
        CHECK(other.has_value() == base.has_value());
        if (other) CHECK(satisfies(rows, *other));
      }
    }
    CHECK(feasible > 40);
    CHECK(feasible < 360);
  }

  TEST_CASE("machine-word and rational eliminations agree") {
    testing::Rng rng(102);
    for (int t = 0; t < 300; ++t) {
      const auto n = static_cast<std::size_t>(testing::uniform(rng, 1, 5));
      const long scale = t % 3 == 0 ? 1000000000L : 4;
      const auto rows = random_rows(rng, n, static_cast<std::size_t>(testing::uniform(rng, 2, 10)), scale);
      const auto fast = fm_solve(n, rows);
      const auto slow = fm_solve_rational(n, rows);
      CHECK(fast.has_value() == slow.has_value());
      if (fast) {
        CHECK(satisfies(rows, *fast));
        CHECK(*fast == *slow);
      }
    }
  }
}
