// SPDX-License-Identifier: Apache-2.0
#include "tropreal/normal_form.hpp"

#include <algorithm>
#include <numeric>

#include "tropreal/errors.hpp"

namespace tropreal {

namespace {

// ---------------------------------------------------------------------------
// Polynomials in X

void xpoly_add_term(XPoly& p, std::uint64_t degree, const Coef& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.try_emplace(degree, c);
  if (!inserted) it->second = poly_add(it->second, c);
}

XPoly xpoly_add(const XPoly& a, const XPoly& b) {
  XPoly r = a;
  for (const auto& [d, c] : b) xpoly_add_term(r, d, c);
  return r;
}

XPoly xpoly_mul(const XPoly& a, const XPoly& b) {
  XPoly r;
  for (const auto& [da, ca] : a) {
    for (const auto& [db, cb] : b) xpoly_add_term(r, da + db, poly_mul(ca, cb));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Star height one

StarHeightOne normalized(std::size_t arity, std::uint64_t period, std::vector<StarTerm> terms) {
  std::map<Coef, XPoly> by_rate;
  for (auto& t : terms) {
    if (t.poly.empty()) continue;
    auto [it, inserted] = by_rate.try_emplace(t.rate, t.poly);
    if (!inserted) it->second = xpoly_add(it->second, t.poly);
  }
  StarHeightOne s{arity, period, {}};
  for (auto& [rate, poly] : by_rate) s.terms.push_back({std::move(poly), rate});
  return s;
}

/// (qX^c)* = (𝟙 ⊕ qX^c ⊕ … ⊕ q^{m-1}X^{(m-1)c}) (q^m X^{mc})*
StarHeightOne rebase_sho(const StarHeightOne& s, std::uint64_t period) {
  if (period == s.period) return s;
  const std::uint64_t m = period / s.period;
  std::vector<StarTerm> terms;
  for (const auto& t : s.terms) {
    if (t.rate.is_zero()) {
      terms.push_back(t);
      continue;
    }
    XPoly unroll;
    Coef power = SymPoly::one(s.arity);
    for (std::uint64_t i = 0; i < m; ++i) {
      xpoly_add_term(unroll, i * s.period, power);
      power = poly_mul(power, t.rate);
    }
    terms.push_back({xpoly_mul(t.poly, unroll), power});
  }
  return normalized(s.arity, period, std::move(terms));
}

/// A concrete form rebuilt from its canonical form, which has the smallest
/// period; symbolic forms are returned unchanged.
StarHeightOne compact(const StarHeightOne& s) {
  if (s.arity != 0) return s;
  const TransientForm t = to_transient_form(canonicalize(to_transient_form(s)));
  XPoly p;
  for (std::uint64_t k = 0; k < t.transient.size(); ++k) xpoly_add_term(p, k, t.transient[k]);
  std::vector<StarTerm> terms{{std::move(p), SymPoly::zero(0)}};
  for (const auto& tail : t.tails) {
    terms.push_back({XPoly{{t.kappa * t.period + tail.residue, tail.u}}, tail.rate});
  }
  return normalized(0, t.period, std::move(terms));
}

StarHeightOne sho_one(std::size_t arity) {
  return {arity, 1, {{XPoly{{0, SymPoly::one(arity)}}, SymPoly::zero(arity)}}};
}

StarHeightOne sho_sum(const StarHeightOne& a, const StarHeightOne& b) {
  const std::uint64_t c = std::lcm(a.period, b.period);
  StarHeightOne ra = rebase_sho(a, c), rb = rebase_sho(b, c);
  std::vector<StarTerm> terms = ra.terms;
  terms.insert(terms.end(), rb.terms.begin(), rb.terms.end());
  return normalized(a.arity, c, std::move(terms));
}

/// P(qX^c)* · P'(q'X^c)* = PP' ((q ⊕ q')X^c)*
StarHeightOne sho_product(const StarHeightOne& a, const StarHeightOne& b) {
  const std::uint64_t c = std::lcm(a.period, b.period);
  StarHeightOne ra = rebase_sho(a, c), rb = rebase_sho(b, c);
  std::vector<StarTerm> terms;
  for (const auto& ta : ra.terms) {
    for (const auto& tb : rb.terms) {
      terms.push_back({xpoly_mul(ta.poly, tb.poly), poly_add(ta.rate, tb.rate)});
    }
  }
  return normalized(a.arity, c, std::move(terms));
}

/// (p X^d)* with d ≥ 1.
StarHeightOne sho_monomial_star(std::size_t arity, const Coef& p, std::uint64_t d) {
  return {arity, d, {{XPoly{{0, SymPoly::one(arity)}}, p}}};
}

StarHeightOne sho_star(const StarHeightOne& s) {
  for (const auto& t : s.terms) {
    if (auto it = t.poly.find(0); it != t.poly.end() && !it->second.is_zero()) {
      throw StarOfUnit("star applied to a series with non-zero constant coefficient");
    }
  }
  // (⊕ T_i)* = ∏ T_i*; for a polynomial P, P* = ∏ over monomials (p X^d)*;
  // (P (qX^c)*)* = 𝟙 ⊕ P (qX^c)* P*.
  StarHeightOne result = sho_one(s.arity);
  for (const auto& t : s.terms) {
    StarHeightOne poly_star = sho_one(s.arity);
    for (const auto& [d, p] : t.poly) {
      poly_star = compact(sho_product(poly_star, sho_monomial_star(s.arity, p, d)));
    }
    if (t.rate.is_zero()) {
      result = compact(sho_product(result, poly_star));
    } else {
      StarHeightOne term{s.arity, s.period, {t}};
      result = compact(sho_product(result, sho_sum(sho_one(s.arity), sho_product(term, poly_star))));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Transient forms

/// ⊕_k u q^k X^{offset + k c}
struct OffsetTerm {
  Coef u;
  std::uint64_t offset;
  Coef rate;
};

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

TransientForm assemble(std::size_t arity, std::uint64_t period, const XPoly& poly,
                       const std::vector<OffsetTerm>& terms, std::uint64_t kappa_min) {
  std::uint64_t kappa = kappa_min;
  if (!poly.empty()) kappa = std::max(kappa, ceil_div(poly.rbegin()->first + 1, period));
  for (const auto& t : terms) {
    if (!t.u.is_zero()) kappa = std::max(kappa, t.offset / period);
  }
  TransientForm f;
  f.arity = arity;
  f.kappa = kappa;
  f.period = period;
  f.transient.assign(kappa * period, SymPoly::zero(arity));
  for (const auto& [d, c] : poly) f.transient[d] = poly_add(f.transient[d], c);
  std::map<std::pair<std::uint64_t, Coef>, Coef> tails;
  for (const auto& t : terms) {
    if (t.u.is_zero()) continue;
    Coef u = t.u;
    std::uint64_t pos = t.offset;
    while (pos < kappa * period) {
      f.transient[pos] = poly_add(f.transient[pos], u);
      u = poly_mul(u, t.rate);
      pos += period;
    }
    if (u.is_zero()) continue;
    auto key = std::make_pair(pos - kappa * period, t.rate);
    auto [it, inserted] = tails.try_emplace(key, u);
    if (!inserted) it->second = poly_add(it->second, u);
  }
  for (auto& [key, u] : tails) f.tails.push_back({u, key.first, key.second});
  return f;
}

XPoly transient_poly(const TransientForm& t) {
  XPoly p;
  for (std::uint64_t i = 0; i < t.transient.size(); ++i) xpoly_add_term(p, i, t.transient[i]);
  return p;
}

std::vector<OffsetTerm> offset_terms(const TransientForm& t) {
  std::vector<OffsetTerm> terms;
  for (const auto& tail : t.tails) {
    terms.push_back({tail.u, t.kappa * t.period + tail.residue, tail.rate});
  }
  return terms;
}

/// Offset terms of t expressed with a period that is a multiple of t.period.
std::vector<OffsetTerm> offset_terms_at(const TransientForm& t, std::uint64_t period) {
  const std::uint64_t m = period / t.period;
  std::vector<OffsetTerm> terms;
  for (const auto& base : offset_terms(t)) {
    Coef u = base.u;
    for (std::uint64_t i = 0; i < m; ++i) {
      terms.push_back({u, base.offset + i * t.period, poly_pow(base.rate, m)});
      u = poly_mul(u, base.rate);
    }
  }
  return terms;
}

void require_concrete(const TransientForm& t) {
  if (t.arity != 0) throw ArityMismatch("canonical forms require a concrete series");
}

// ---------------------------------------------------------------------------
// Canonicalization

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> d;
  for (std::uint64_t i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      d.push_back(i);
      if (i != n / i) d.push_back(n / i);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

/// Dense view of a concrete series with every coefficient cached up to a
/// horizon.
class CoefficientTable {
public:
  CoefficientTable(const TransientForm& t, std::uint64_t horizon) {
    values_.reserve(horizon);
    for (std::uint64_t k = 0; k < horizon; ++k) values_.push_back(t.coefficient(k).constant_value());
  }
  const QMax& operator[](std::uint64_t k) const { return values_.at(k); }

private:
  std::vector<QMax> values_;
};

QMax rate_between(const QMax& first, const QMax& next) {
  if (first.is_bottom() || next.is_bottom()) return QMax::bottom();
  return QMax(Rational(next.value() - first.value()));
}

/// True when ⟨S, X^{n+c}⟩ = q_j ⊗ ⟨S, X^n⟩ for every n ≥ κc up to `limit`, one
/// rate per residue.
bool law_holds(const CoefficientTable& f, std::uint64_t kappa, std::uint64_t c,
               std::uint64_t limit) {
  for (std::uint64_t j = 0; j < c; ++j) {
    const std::uint64_t start = kappa * c + j;
    const QMax& first = f[start];
    const QMax q = rate_between(first, f[start + c]);
    for (std::uint64_t n = start; n + c <= limit; n += c) {
      if (f[n + c] != otimes(q, f[n])) {
        if (!(first.is_bottom() && f[n + c].is_bottom())) return false;
      }
    }
  }
  return true;
}

}  // namespace

StarHeightOne to_star_height_one(const RatExpr& e) {
  switch (e.kind()) {
    case RatExpr::Kind::Monomial: {
      std::vector<StarTerm> terms;
      if (!e.coef().is_zero()) {
        terms.push_back({XPoly{{e.degree(), e.coef()}}, SymPoly::zero(e.arity())});
      }
      return normalized(e.arity(), 1, std::move(terms));
    }
    case RatExpr::Kind::Sum:
      return sho_sum(to_star_height_one(e.left()), to_star_height_one(e.right()));
    case RatExpr::Kind::Product:
      return sho_product(to_star_height_one(e.left()), to_star_height_one(e.right()));
    case RatExpr::Kind::Star:
      return compact(sho_star(to_star_height_one(e.child())));
  }
  return {};
}

Coef TransientForm::coefficient(std::uint64_t k) const {
  if (k < transient.size()) return transient[k];
  const std::uint64_t r = k - kappa * period;
  const std::uint64_t j = r % period;
  const std::uint64_t step = r / period;
  Coef acc = SymPoly::zero(arity);
  for (const auto& t : tails) {
    if (t.residue == j) acc = poly_add(acc, poly_mul(t.u, poly_pow(t.rate, step)));
  }
  return acc;
}

QMax CanonicalUGM::coefficient(std::uint64_t k) const {
  if (k < transient.size()) return transient[k];
  const std::uint64_t r = k - kappa * period;
  const auto& [u, q] = tails.at(r % period);
  return otimes(u, power(q, r / period));
}

TransientForm to_transient_form(const StarHeightOne& s, std::uint64_t kappa_min) {
  XPoly poly;
  std::vector<OffsetTerm> terms;
  for (const auto& t : s.terms) {
    for (const auto& [d, p] : t.poly) terms.push_back({p, d, t.rate});
  }
  return assemble(s.arity, s.period, poly, terms, kappa_min);
}

TransientForm rebase(const TransientForm& t, std::uint64_t period, std::uint64_t kappa_min) {
  if (period == 0 || period % t.period != 0) {
    throw InvalidArgument("rebase period must be a multiple of the current period");
  }
  return assemble(t.arity, period, transient_poly(t), offset_terms_at(t, period), kappa_min);
}

CanonicalUGM canonicalize(const TransientForm& t) {
  require_concrete(t);
  const std::uint64_t c = t.period;

  // Dominant term per residue and the block index past which it majorizes
  // every other term.
  std::vector<std::pair<QMax, QMax>> dominant(c, {QMax::bottom(), QMax::bottom()});
  std::uint64_t crossing = 0;
  for (std::uint64_t j = 0; j < c; ++j) {
    std::vector<std::pair<QMax, QMax>> lines;
    for (const auto& tail : t.tails) {
      if (tail.residue == j) lines.emplace_back(tail.u.constant_value(), tail.rate.constant_value());
    }
    if (lines.empty()) continue;
    auto& [ustar, qstar] = dominant[j];
    qstar = lines.front().second;
    for (const auto& l : lines) qstar = oplus(qstar, l.second);
    for (const auto& l : lines) {
      if (l.second == qstar) ustar = oplus(ustar, l.first);
    }
    for (const auto& [u, q] : lines) {
      if (q == qstar) continue;
      std::uint64_t k = 0;
      if (q.is_bottom()) {
        k = u <= ustar ? 0 : 1;
      } else {
        // smallest k ≥ 0 with u + kq ≤ u* + kq*
        const Rational gap = u.value() - ustar.value();
        if (gap > 0) {
          Rational ratio = gap / (qstar.value() - q.value());
          mpz_class ceil_k;
          mpz_cdiv_q(ceil_k.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
          k = ceil_k.get_ui();
        }
      }
      crossing = std::max(crossing, k);
    }
  }
  const std::uint64_t kappa = t.kappa + crossing;

  // Explicit description valid from block κ onward.
  TransientForm explicit_form;
  explicit_form.arity = 0;
  explicit_form.kappa = kappa;
  explicit_form.period = c;
  for (std::uint64_t k = 0; k < kappa * c; ++k) explicit_form.transient.push_back(t.coefficient(k));
  for (std::uint64_t j = 0; j < c; ++j) {
    const auto& [u, q] = dominant[j];
    const QMax shifted = otimes(u, power(q, crossing));
    if (shifted.is_bottom()) continue;
    explicit_form.tails.push_back({SymPoly::constant(0, shifted), j, SymPoly::constant(0, q)});
  }

  // Minimal period among divisors of c, then minimal κ for that period.
  const std::uint64_t limit = kappa * c + 4 * c;
  const CoefficientTable f(explicit_form, limit + c + 1);
  for (std::uint64_t cp : divisors(c)) {
    const std::uint64_t kappa_max = ceil_div(kappa * c + c, cp);
    for (std::uint64_t kp = 0; kp <= kappa_max; ++kp) {
      const std::uint64_t horizon = std::max(kp * cp, kappa * c) + 3 * c;
      if (!law_holds(f, kp, cp, std::min(horizon, limit))) continue;
      CanonicalUGM g;
      g.kappa = kp;
      g.period = cp;
      for (std::uint64_t k = 0; k < kp * cp; ++k) g.transient.push_back(f[k]);
      for (std::uint64_t j = 0; j < cp; ++j) {
        const QMax& u = f[kp * cp + j];
        const QMax q = u.is_bottom() ? QMax::bottom() : rate_between(u, f[kp * cp + j + cp]);
        g.tails.emplace_back(u, q);
      }
      return g;
    }
  }
  throw Error("canonicalize: no periodic law found (internal error)");
}

CanonicalUGM canonicalize(const RatExpr& e) {
  if (!e.is_concrete()) throw ArityMismatch("canonicalize requires a concrete expression");
  return canonicalize(to_transient_form(to_star_height_one(e)));
}

TransientForm to_transient_form(const CanonicalUGM& g) {
  TransientForm t;
  t.arity = 0;
  t.kappa = g.kappa;
  t.period = g.period;
  for (const auto& v : g.transient) t.transient.push_back(SymPoly::constant(0, v));
  for (std::uint64_t j = 0; j < g.tails.size(); ++j) {
    const auto& [u, q] = g.tails[j];
    if (u.is_bottom()) continue;
    t.tails.push_back({SymPoly::constant(0, u), j, SymPoly::constant(0, q)});
  }
  return t;
}

// ---------------------------------------------------------------------------
// Undersample, merge, shift

TransientForm undersample(const TransientForm& t, std::uint64_t j, std::uint64_t c) {
  if (c == 0 || j >= c) throw InvalidArgument("undersample residue out of range");
  const std::uint64_t big = std::lcm(t.period, c);
  const TransientForm r = rebase(t, big);
  XPoly poly;
  for (std::uint64_t i = j; i < r.transient.size(); i += c) {
    xpoly_add_term(poly, (i - j) / c, r.transient[i]);
  }
  std::vector<OffsetTerm> terms;
  for (const auto& tail : r.tails) {
    if (tail.residue % c != j % c) continue;
    const std::uint64_t pos = r.kappa * big + tail.residue;
    terms.push_back({tail.u, (pos - j) / c, tail.rate});
  }
  return assemble(t.arity, big / c, poly, terms, 0);
}

TransientForm merge(std::span<const TransientForm> parts) {
  if (parts.empty()) throw InvalidArgument("merge of an empty list");
  const std::size_t arity = parts.front().arity;
  std::uint64_t big = 1;
  for (const auto& p : parts) {
    if (p.arity != arity) throw ArityMismatch("merge of series with different arities");
    big = std::lcm(big, p.period);
  }
  const std::uint64_t n = parts.size();
  XPoly poly;
  std::vector<OffsetTerm> terms;
  for (std::uint64_t j = 0; j < n; ++j) {
    const TransientForm r = rebase(parts[j], big);
    for (std::uint64_t i = 0; i < r.transient.size(); ++i) {
      xpoly_add_term(poly, i * n + j, r.transient[i]);
    }
    for (const auto& term : offset_terms(r)) {
      terms.push_back({term.u, term.offset * n + j, term.rate});
    }
  }
  return assemble(arity, big * n, poly, terms, 0);
}

TransientForm shift(const TransientForm& t, std::uint64_t m) {
  XPoly poly;
  for (std::uint64_t i = m; i < t.transient.size(); ++i) xpoly_add_term(poly, i - m, t.transient[i]);
  std::vector<OffsetTerm> terms;
  for (auto term : offset_terms(t)) {
    while (term.offset < m && !term.u.is_zero()) {
      term.u = poly_mul(term.u, term.rate);
      term.offset += t.period;
    }
    if (term.u.is_zero()) continue;
    term.offset -= m;
    terms.push_back(std::move(term));
  }
  return assemble(t.arity, t.period, poly, terms, 0);
}

CanonicalUGM undersample(const CanonicalUGM& g, std::uint64_t j, std::uint64_t c) {
  return canonicalize(undersample(to_transient_form(g), j, c));
}

CanonicalUGM merge(std::span<const CanonicalUGM> parts) {
  std::vector<TransientForm> forms;
  for (const auto& p : parts) forms.push_back(to_transient_form(p));
  return canonicalize(merge(std::span<const TransientForm>(forms)));
}

CanonicalUGM shift(const CanonicalUGM& g, std::uint64_t m) {
  return canonicalize(shift(to_transient_form(g), m));
}

SeriesStream undersample(const SeriesStream& s, std::uint64_t j, std::uint64_t c) {
  if (c == 0 || j >= c) throw InvalidArgument("undersample residue out of range");
  return SeriesStream(s.arity(), [s, j, c](std::uint64_t k) { return s.coefficient(k * c + j); });
}

SeriesStream merge(std::span<const SeriesStream> parts) {
  if (parts.empty()) throw InvalidArgument("merge of an empty list");
  std::vector<SeriesStream> copy(parts.begin(), parts.end());
  const std::size_t arity = copy.front().arity();
  return SeriesStream(arity, [copy](std::uint64_t k) {
    return copy[k % copy.size()].coefficient(k / copy.size());
  });
}

SeriesStream shift(const SeriesStream& s, std::uint64_t m) {
  return SeriesStream(s.arity(), [s, m](std::uint64_t k) { return s.coefficient(k + m); });
}

// ---------------------------------------------------------------------------
// Equality

bool series_equal(const CanonicalUGM& a, const CanonicalUGM& b) {
  const std::uint64_t c = std::lcm(a.period, b.period);
  const std::uint64_t kappa =
      std::max(ceil_div(a.kappa * a.period, c), ceil_div(b.kappa * b.period, c));
  const TransientForm ra = rebase(to_transient_form(a), c, kappa);
  const TransientForm rb = rebase(to_transient_form(b), c, kappa);
  if (ra.kappa != rb.kappa || ra.transient != rb.transient) return false;
  auto tails = [](const TransientForm& t) {
    std::map<std::uint64_t, std::pair<Coef, Coef>> m;
    for (const auto& tail : t.tails) m.emplace(tail.residue, std::make_pair(tail.u, tail.rate));
    return m;
  };
  return tails(ra) == tails(rb);
}

bool series_equal(const RatExpr& a, const RatExpr& b) {
  return series_equal(canonicalize(a), canonicalize(b));
}

// ---------------------------------------------------------------------------
// Conversion back to expressions

RatExpr to_expr(const StarHeightOne& s) {
  std::optional<RatExpr> out;
  auto add = [&](const RatExpr& e) { out = out ? RatExpr::sum(*out, e) : e; };
  for (const auto& t : s.terms) {
    std::optional<RatExpr> p;
    for (const auto& [d, c] : t.poly) {
      RatExpr m = RatExpr::monomial(c, d);
      p = p ? RatExpr::sum(*p, m) : m;
    }
    if (!p) continue;
    if (t.rate.is_zero()) {
      add(*p);
    } else {
      add(RatExpr::product(*p, RatExpr::star(RatExpr::monomial(t.rate, s.period))));
    }
  }
  return out ? *out : RatExpr::zero(s.arity);
}

RatExpr to_expr(const TransientForm& t) {
  std::optional<RatExpr> out;
  auto add = [&](const RatExpr& e) { out = out ? RatExpr::sum(*out, e) : e; };
  for (std::uint64_t i = 0; i < t.transient.size(); ++i) {
    if (!t.transient[i].is_zero()) add(RatExpr::monomial(t.transient[i], i));
  }
  for (const auto& tail : t.tails) {
    RatExpr head = RatExpr::monomial(tail.u, t.kappa * t.period + tail.residue);
    if (tail.rate.is_zero()) {
      add(head);
    } else {
      add(RatExpr::product(head, RatExpr::star(RatExpr::monomial(tail.rate, t.period))));
    }
  }
  return out ? *out : RatExpr::zero(t.arity);
}

RatExpr to_expr(const CanonicalUGM& g) { return to_expr(to_transient_form(g)); }

std::string to_string(const StarHeightOne& s, std::span<const std::string> names) {
  return to_string(to_expr(s), names);
}

std::string to_string(const TransientForm& t, std::span<const std::string> names) {
  return to_string(to_expr(t), names);
}

std::string to_string(const CanonicalUGM& g) { return to_string(to_expr(g)); }

}  // namespace tropreal
