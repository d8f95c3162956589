// SPDX-License-Identifier: Apache-2.0
// Random inputs and independent oracles shared by the unit and acceptance tests.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tropreal/realization.hpp"
#include "tropreal/semipoly.hpp"
#include "tropreal/series_expr.hpp"

namespace tropreal::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// -inf with probability p_bottom, otherwise an integer in [lo, hi].
inline QMax random_scalar(Rng& rng, long lo, long hi, double p_bottom) {
  if (chance(rng, p_bottom)) return QMax::bottom();
  return QMax(uniform(rng, lo, hi));
}

/// Small rational in [-3, 3] with denominator 1, 2 or 3.
inline QMax random_fraction(Rng& rng) {
  return QMax(Rational(uniform(rng, -9, 9), uniform(rng, 1, 3)));
}

inline std::vector<QMax> random_point(Rng& rng, std::size_t n, long lo, long hi, double p_bottom) {
  std::vector<QMax> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(random_scalar(rng, lo, hi, p_bottom));
  return p;
}

/// Concrete star-admissible expression. With `positive` every term has an X
/// factor, so the result may be starred.
inline RatExpr random_concrete(Rng& rng, int depth, bool positive = false) {
  auto coef = [&] { return chance(rng, 0.1) ? QMax::bottom() : random_fraction(rng); };
  if (depth <= 0 || chance(rng, 0.25)) {
    const std::uint64_t lo = positive ? 1 : 0;
    return RatExpr::monomial(SymPoly::constant(0, coef()),
                             static_cast<std::uint64_t>(uniform(rng, static_cast<long>(lo), 3)));
  }
  switch (uniform(rng, 0, 2)) {
    case 0:
      return RatExpr::sum(random_concrete(rng, depth - 1, positive),
                          random_concrete(rng, depth - 1, positive));
    case 1:
      return RatExpr::product(random_concrete(rng, depth - 1, positive),
                              random_concrete(rng, depth - 1, false));
    default: {
      const RatExpr inner = RatExpr::star(random_concrete(rng, depth - 1, true));
      if (!positive) return inner;
      return RatExpr::product(RatExpr::monomial(SymPoly::constant(0, coef()), 1), inner);
    }
  }
}

/// Realization with entries in {-inf} ∪ [lo, hi].
inline Realization random_realization(Rng& rng, std::size_t dim, long lo, long hi, double p_bottom) {
  Realization r = Realization::bottom(dim);
  for (auto& x : r.c) x = random_scalar(rng, lo, hi, p_bottom);
  for (auto& row : r.A) {
    for (auto& x : row) x = random_scalar(rng, lo, hi, p_bottom);
  }
  for (auto& x : r.b) x = random_scalar(rng, lo, hi, p_bottom);
  return r;
}

/// c ⊗ A^k ⊗ b by repeated vector-matrix products, for k = 0..max_k.
inline std::vector<QMax> matrix_coefficients(const Realization& r, std::uint64_t max_k) {
  std::vector<QMax> out;
  std::vector<QMax> row = r.c;
  for (std::uint64_t k = 0; k <= max_k; ++k) {
    QMax v = QMax::bottom();
    for (std::size_t i = 0; i < r.dim; ++i) v = oplus(v, otimes(row[i], r.b[i]));
    out.push_back(v);
    std::vector<QMax> next(r.dim, QMax::bottom());
    for (std::size_t i = 0; i < r.dim; ++i) {
      for (std::size_t j = 0; j < r.dim; ++j) next[j] = oplus(next[j], otimes(row[i], r.A[i][j]));
    }
    row = std::move(next);
  }
  return out;
}

/// Random monomial over n variables with exponents in [0, max_exp].
inline SymMonomial random_monomial(Rng& rng, std::size_t n, std::uint32_t max_exp, long lo, long hi) {
  SymMonomial m{QMax(uniform(rng, lo, hi)), Exponents(n, 0)};
  for (auto& e : m.exponents) e = static_cast<std::uint32_t>(uniform(rng, 0, max_exp));
  return m;
}

inline SymPoly random_poly(Rng& rng, std::size_t n, std::size_t max_terms) {
  SymPoly p(n);
  const auto terms = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_terms)));
  for (std::size_t t = 0; t < terms; ++t) {
    const SymMonomial m = random_monomial(rng, n, 2, -3, 3);
    p.add_monomial(m.exponents, m.coef);
  }
  return p;
}

/// Every point of ({-inf} ∪ [lo, hi])^n, in lexicographic order.
inline std::vector<std::vector<QMax>> grid(std::size_t n, long lo, long hi) {
  std::vector<QMax> values{QMax::bottom()};
  for (long v = lo; v <= hi; ++v) values.emplace_back(v);
  std::vector<std::vector<QMax>> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<QMax> p;
    for (auto i : idx) p.push_back(values[i]);
    out.push_back(std::move(p));
    std::size_t d = 0;
    while (d < n && ++idx[d] == values.size()) idx[d++] = 0;
    if (d == n) break;
  }
  return out;
}

/// Sum of one to three terms  m X^d (m' X^e)*  with monomials over three
/// indeterminates.
inline RatExpr random_template(Rng& rng) {
  auto mono = [&] {
    SymPoly p(3);
    Exponents e(3, 0);
    for (auto& x : e) x = static_cast<std::uint32_t>(uniform(rng, 0, 1));
    p.add_monomial(e, QMax(uniform(rng, -2, 2)));
    return p;
  };
  const long terms = uniform(rng, 1, 3);
  RatExpr out = RatExpr::zero(3);
  for (long t = 0; t < terms; ++t) {
    RatExpr term = RatExpr::monomial(mono(), static_cast<std::uint64_t>(uniform(rng, 0, 2)));
    if (chance(rng, 0.85)) {
      const auto e = static_cast<std::uint64_t>(uniform(rng, 1, 2));
      term = RatExpr::product(term, RatExpr::star(RatExpr::monomial(mono(), e)));
    }
    out = t == 0 ? term : RatExpr::sum(out, term);
  }
  return out;
}

inline std::vector<QMax> nearby(Rng& rng, std::vector<QMax> x) {
  for (auto& v : x) {
    if (chance(rng, 0.3)) {
      v = chance(rng, 0.2) ? QMax::bottom() : (v.is_bottom() ? QMax(0) : otimes(v, QMax(uniform(rng, -1, 1))));
    }
  }
  return x;
}

/// Direct half-space semantics, independent of the library evaluators.
inline QMax eval_monomial(const SymMonomial& m, const std::vector<QMax>& x) {
  QMax v = m.coef;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (m.exponents[i] > 0) v = otimes(v, power(x[i], m.exponents[i]));
  }
  return v;
}

inline bool direct_contains(const Polyhedron& p, const std::vector<QMax>& x) {
  for (const auto& h : p.constraints) {
    const QMax l = eval_monomial(h.lhs, x), r = eval_monomial(h.rhs, x);
    if (h.strict ? !(l.is_finite() && r < l) : l < r) return false;
  }
  return true;
}

inline bool direct_contains(const SemiPolySet& s, const std::vector<QMax>& x) {
  for (const auto& p : s.parts) {
    if (direct_contains(p, x)) return true;
  }
  return false;
}

}  // namespace tropreal::testing
