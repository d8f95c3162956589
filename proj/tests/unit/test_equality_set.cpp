// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "generators.hpp"
#include "tropreal/equality_set.hpp"
#include "tropreal/errors.hpp"

using namespace tropreal;

namespace {

const std::vector<std::string> kUV{"u1", "v1", "u2", "v2"};
const std::vector<std::string> kABC{"a", "b", "c"};

RatExpr diag_template() { return parse_expr("u1 (v1 X)* + u2 (v2 X^2)*", kUV); }

SymPoly var(std::size_t n, std::size_t i) { return SymPoly::variable(n, i); }

std::vector<QMax> pt(std::initializer_list<long> xs) {
  std::vector<QMax> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_SUITE("equality-set") {
  TEST_CASE("align") {
    const TransientForm sym = to_transient_form(to_star_height_one(diag_template()));
    CHECK(sym.period == 2);
    CHECK(sym.kappa == 0);
    const CanonicalUGM conc = canonicalize(parse_expr("2 (3 X)*"));
    CHECK(conc.period == 1);
    CHECK(conc.kappa == 0);
    const AlignedPair a = align(sym, conc);
    CHECK(a.sym.period == 2);
    CHECK(a.conc.period == 2);
    CHECK(a.sym.kappa == 0);
    CHECK(a.conc.kappa == 0);
    for (std::uint64_t k = 0; k <= 30; ++k) {
      CHECK(a.sym.coefficient(k) == sym.coefficient(k));
      CHECK(a.conc.coefficient(k) == conc.coefficient(k));
    }
    const AlignedPair again = align(a.sym, a.conc);
    CHECK(again.sym.kappa == a.sym.kappa);
    CHECK(again.sym.period == a.sym.period);
    CHECK(again.conc == a.conc);

    const AlignedPair ex = align(sym, canonicalize(parse_expr("0 + X (1 X)*")));
    CHECK(ex.sym.kappa == 1);
    CHECK(ex.sym.period == 2);
  }

  TEST_CASE("rewrite keeps the series") {
    const CanonicalUGM g = canonicalize(parse_expr("(X^2)* + 1 X (1 X^2)*"));
    const CanonicalUGM r = rewrite(g, 6, 2);
    CHECK(r.period == 6);
    CHECK(r.kappa >= 2);
    for (std::uint64_t k = 0; k <= 40; ++k) CHECK(r.coefficient(k) == g.coefficient(k));
  }

  TEST_CASE("line sets") {
    const std::size_t n = 4;
    const SemiPolySet le = line_le_set(var(n, 2), var(n, 3), QMax(0), QMax(1)).expand();
    for (const auto& x : testing::grid(n, -2, 2)) {
      const bool want = x[2].is_bottom() || (leq(x[2], QMax(0)) && leq(x[3], QMax(1)));
      CHECK(le.contains(x) == want);
    }
    CHECK(line_le_set(SymPoly::zero(n), var(n, 0), QMax(0), QMax(0)).expand() == SemiPolySet::whole(n));

    // u (q X)* ≤ 0 (2 X)* for every coefficient.
    const SetExpr sweep = line_le_set(var(2, 0), var(2, 1), QMax(0), QMax(2));
    for (const auto& x : testing::grid(2, -3, 3)) {
      bool want = true;
      for (long k = 0; k <= 20; ++k) want = want && leq(otimes(x[0], power(x[1], k)), QMax(2 * k));
      CHECK(sweep.contains(x) == want);
    }
    CHECK(sweep.contains(pt({-1, 1})));

    const SymPoly uv = poly_mul(var(2, 0), var(2, 1)), vv = poly_pow(var(2, 1), 2);
    CHECK(render(simplified(line_eq_set(uv, vv, QMax(0), QMax(2)).expand()), std::vector<std::string>{"u1", "v1"}) ==
          "u1 = -1, v1 = 1");
    const SetExpr ez = line_eq_set(uv, vv, QMax::bottom(), QMax(2));
    for (const auto& x : testing::grid(2, -2, 2)) CHECK(ez.contains(x) == (x[0].is_bottom() || x[1].is_bottom()));
    CHECK(render(simplified(line_eq_set(var(2, 0), var(2, 1), QMax(3), QMax(5)).expand()),
                 std::vector<std::string>{"a", "b"}) == "a = 3, b = 5");
  }

  TEST_CASE("convex equality") {
    const SymPoly a = var(3, 0), b = var(3, 1), c = var(3, 2);
    const SetExpr single = convex_eq_set({Line{a, b}}, QMax(1), QMax(2));
    const SetExpr eq = line_eq_set(a, b, QMax(1), QMax(2));
    const SetExpr twice = convex_eq_set({Line{a, b}, Line{a, b}}, QMax(1), QMax(2));
    const SetExpr two = convex_eq_set({Line{a, b}, Line{c, b}}, QMax(1), QMax(2));
    for (const auto& x : testing::grid(3, -3, 3)) {
      CHECK(single.contains(x) == eq.contains(x));
      CHECK(twice.contains(x) == eq.contains(x));
      // max(a, c) + k b = 1 + 2k for all k.
      const bool want = x[1] == QMax(2) && oplus(x[0], x[2]) == QMax(1);
      CHECK(two.contains(x) == want);
    }
  }

  TEST_CASE("diagonal template") {
    const RatExpr target = parse_expr("0 + X (1 X)*");
    const SemiPolySet s = equality_set(diag_template(), target);
    CHECK(render(simplified(s), kUV) == "u1 = -1, v1 = 1, u2 = 0, v2 <= 1");
    for (const auto& x : testing::grid(4, -3, 3)) {
      const bool want = x[0] == QMax(-1) && x[1] == QMax(1) && x[2] == QMax(0) && leq(x[3], QMax(1));
      CHECK(s.contains(x) == want);
    }
    const auto w = equality_witness(diag_template(), target);
    REQUIRE(w);
    CHECK(series_equal(evaluate_at(diag_template(), *w), target));
  }

  TEST_CASE("no indeterminates") {
    const RatExpr a = parse_expr("(X)*"), b = parse_expr("0 + 0 X (0 X)*");
    CHECK(equality_set(a, b) == SemiPolySet::whole(0));
    CHECK(equality_set(a, parse_expr("(1 X)*")).parts.empty());
  }

  TEST_CASE("single line") {
    const std::vector<std::string> names{"u", "q"};
    const RatExpr t = parse_expr("u (q X)*", names);
    const SemiPolySet s = equality_set(t, parse_expr("2 (3 X)*"));
    CHECK(render(simplified(s), names) == "u = 2, q = 3");
    for (const auto& x : testing::grid(2, -4, 4)) {
      const bool want = concrete_coefficients(evaluate_at(t, x), 10) == concrete_coefficients(parse_expr("2 (3 X)*"), 10);
      CHECK(s.contains(x) == want);
    }
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(equality_set(diag_template(), diag_template()), ArityMismatch);
    CHECK_THROWS_AS(equality_set(parse_expr("(a + X)*", kABC), parse_expr("X*")), StarOfUnit);
    CHECK_THROWS_AS(bottom_patterns(32), DimensionCap);
  }

  TEST_CASE("bottom patterns") {
    const auto ps = bottom_patterns(3);
    REQUIRE(ps.size() == 8);
    CHECK(ps.front() == std::vector<bool>{true, true, true});
    CHECK(ps.back() == std::vector<bool>{false, false, false});
    for (std::size_t i = 1; i < ps.size(); ++i) {
      CHECK(std::count(ps[i - 1].begin(), ps[i - 1].end(), true) >= std::count(ps[i].begin(), ps[i].end(), true));
    }
  }

  TEST_CASE("random templates against evaluation") {
    testing::Rng rng(401);
    int members = 0;
    for (int t = 0; t < 40; ++t) {
      const RatExpr tpl = testing::random_template(rng);
      const auto seed = testing::random_point(rng, 3, -2, 2, 0.15);
      const RatExpr target = testing::chance(rng, 0.8) ? evaluate_at(tpl, seed) : testing::random_concrete(rng, 2);
      const SetExpr plain = equality_set_expr(tpl, target);
      const SetExpr strata = stratified_set_expr(tpl, target);
      const EqualitySystem system = equality_system(tpl, target);
      const SemiPolySet full = equality_set(tpl, target);
      const auto w = equality_witness(tpl, target);
      CHECK(w.has_value() == !full.parts.empty());
      if (w) CHECK(series_equal(evaluate_at(tpl, *w), target));
      for (int s = 0; s < 100; ++s) {
        const auto x = s % 2 == 0 ? testing::nearby(rng, seed) : testing::random_point(rng, 3, -2, 2, 0.2);
        const bool want = series_equal(evaluate_at(tpl, x), target);
        members += want ? 1 : 0;
        CHECK(plain.contains(x) == want);
        CHECK(strata.contains(x) == want);
        CHECK(full.contains(x) == want);
        bool factors = true;
        for (const auto& f : system.transient) factors = factors && f.contains(x);
        for (const auto& f : system.residues) factors = factors && f.contains(x);
        CHECK(factors == want);
        // Points of the set match every listed coefficient.
        if (want) {
          CHECK(concrete_coefficients(evaluate_at(tpl, x), 25) == concrete_coefficients(target, 25));
        }
      }
    }
    CHECK(members > 200);
  }
}
