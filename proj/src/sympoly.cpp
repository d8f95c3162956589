// SPDX-License-Identifier: Apache-2.0
#include "tropreal/sympoly.hpp"

#include "tropreal/errors.hpp"

namespace tropreal {

namespace {

void check_arity(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ArityMismatch("polynomial arity mismatch: " + std::to_string(a) + " vs " +
                        std::to_string(b));
  }
}

}  // namespace

QMax SymMonomial::evaluate(std::span<const QMax> point) const {
  if (point.size() != exponents.size()) {
    throw ArityMismatch("point has " + std::to_string(point.size()) +
                        " coordinates, monomial expects " + std::to_string(exponents.size()));
  }
  if (coef.is_bottom()) return QMax::bottom();
  Rational acc = coef.value();
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    if (point[i].is_bottom()) return QMax::bottom();
    acc += point[i].value() * exponents[i];
  }
  return QMax(acc);
}

SymPoly SymPoly::constant(std::size_t arity, const QMax& c) {
  SymPoly p(arity);
  p.add_monomial(Exponents(arity, 0), c);
  return p;
}

SymPoly SymPoly::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw ArityMismatch("variable index out of range");
  Exponents e(arity, 0);
  e[index] = 1;
  SymPoly p(arity);
  p.add_monomial(e, QMax::one());
  return p;
}

SymPoly SymPoly::monomial(const SymMonomial& m) {
  SymPoly p(m.arity());
  p.add_monomial(m.exponents, m.coef);
  return p;
}

bool SymPoly::is_constant() const {
  for (const auto& [e, c] : terms_) {
    for (auto x : e) {
      if (x != 0) return false;
    }
  }
  return true;
}

QMax SymPoly::constant_value() const {
  if (terms_.empty()) return QMax::bottom();
  return QMax(terms_.begin()->second);
}

std::vector<SymMonomial> SymPoly::monomials() const {
  std::vector<SymMonomial> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.push_back({QMax(c), e});
  return out;
}

void SymPoly::add_monomial(const Exponents& exponents, const QMax& coef) {
  check_arity(arity_, exponents.size());
  if (coef.is_bottom()) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coef.value());
  if (!inserted && it->second < coef.value()) it->second = coef.value();
}

std::strong_ordering operator<=>(const SymPoly& a, const SymPoly& b) {
  if (auto c = a.arity_ <=> b.arity_; c != 0) return c;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    const int v = cmp(ia->second, ib->second);
    if (v != 0) return v < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (ia == a.terms_.end()) {
    return ib == b.terms_.end() ? std::strong_ordering::equal : std::strong_ordering::less;
  }
  return std::strong_ordering::greater;
}

SymPoly poly_add(const SymPoly& p, const SymPoly& q) {
  check_arity(p.arity(), q.arity());
  SymPoly r = p;
  for (const auto& [e, c] : q.terms()) r.add_monomial(e, QMax(c));
  return r;
}

SymPoly poly_mul(const SymPoly& p, const SymPoly& q) {
  check_arity(p.arity(), q.arity());
  SymPoly r(p.arity());
  Exponents e(p.arity());
  for (const auto& [ep, cp] : p.terms()) {
    for (const auto& [eq, cq] : q.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + eq[i];
      r.add_monomial(e, QMax(Rational(cp + cq)));
    }
  }
  return r;
}

SymPoly poly_pow(const SymPoly& p, std::uint64_t k) {
  SymPoly result = SymPoly::one(p.arity());
  SymPoly base = p;
  while (k > 0) {
    if (k & 1) result = poly_mul(result, base);
    k >>= 1;
    if (k > 0) base = poly_mul(base, base);
  }
  return result;
}

QMax evaluate(const SymPoly& p, std::span<const QMax> point) {
  check_arity(p.arity(), point.size());
  QMax acc = QMax::bottom();
  for (const auto& [e, c] : p.terms()) {
    acc = oplus(acc, SymMonomial{QMax(c), e}.evaluate(point));
  }
  return acc;
}

std::string monomial_to_string(const SymMonomial& m, std::span<const std::string> names) {
  if (m.coef.is_bottom()) return "-inf";
  std::string vars;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    if (m.exponents[i] == 0) continue;
    if (!vars.empty()) vars += ' ';
    vars += i < names.size() ? names[i] : "d" + std::to_string(i + 1);
    if (m.exponents[i] > 1) vars += "^" + std::to_string(m.exponents[i]);
  }
  if (vars.empty()) return m.coef.to_string();
  if (m.coef.value() == 0) return vars;
  return m.coef.to_string() + " " + vars;
}

std::string SymPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "-inf";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += monomial_to_string({QMax(c), e}, names);
  }
  return out;
}

}  // namespace tropreal
