// SPDX-License-Identifier: Apache-2.0
#include "tropreal/semipoly.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>

#include "tropreal/errors.hpp"
#include "tropreal/fourier_motzkin.hpp"
#include "tropreal/set_expr.hpp"

namespace tropreal {

namespace {

void check_arity(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ArityMismatch("set arity mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

SymMonomial constant_monomial(std::size_t arity, const QMax& c) {
  return {c, Exponents(arity, 0)};
}

SymMonomial support_of(const SymMonomial& m) {
  SymMonomial s{QMax::one(), m.exponents};
  for (auto& e : s.exponents) e = e > 0 ? 1 : 0;
  return s;
}

bool has_variables(const SymMonomial& m) {
  return std::any_of(m.exponents.begin(), m.exponents.end(), [](auto e) { return e > 0; });
}

HalfSpace canonical_false(std::size_t arity) {
  return {constant_monomial(arity, QMax::bottom()), constant_monomial(arity, QMax::one()), false};
}

HalfSpace canonical_true(std::size_t arity) {
  return {constant_monomial(arity, QMax::one()), constant_monomial(arity, QMax::bottom()), false};
}

/// lhs coefficient moved to the right and exponents divided by their gcd.
HalfSpace shifted(const HalfSpace& h) {
  HalfSpace r = h;
  r.rhs.coef = QMax(Rational(h.rhs.coef.value() - h.lhs.coef.value()));
  r.lhs.coef = QMax::one();
  std::uint32_t g = 0;
  for (auto e : r.lhs.exponents) g = std::gcd(g, e);
  for (auto e : r.rhs.exponents) g = std::gcd(g, e);
  if (g > 1) {
    for (auto& e : r.lhs.exponents) e /= g;
    for (auto& e : r.rhs.exponents) e /= g;
    r.rhs.coef = QMax(Rational(r.rhs.coef.value() / g));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Bottom patterns

enum class Status : std::uint8_t { Unknown, Finite, Bottom };

Status monomial_status(const SymMonomial& m, const std::vector<Status>& st) {
  if (m.coef.is_bottom()) return Status::Bottom;
  Status s = Status::Finite;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    if (m.exponents[i] == 0) continue;
    if (st[i] == Status::Bottom) return Status::Bottom;
    if (st[i] == Status::Unknown) s = Status::Unknown;
  }
  return s;
}

enum class Verdict { Satisfied, Affine, Undecided, Conflict };

/// Forces what the constraint implies about the pattern; `changed` is set
/// when a coordinate gets assigned.
Verdict propagate(const HalfSpace& h, std::vector<Status>& st, bool& changed) {
  auto force_finite = [&](const SymMonomial& m) {
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
      if (m.exponents[i] > 0 && st[i] == Status::Unknown) {
        st[i] = Status::Finite;
        changed = true;
      }
    }
  };
  Status l = monomial_status(h.lhs, st);
  const Status r = monomial_status(h.rhs, st);
  if (h.strict) {
    if (l == Status::Bottom) return Verdict::Conflict;
    if (l == Status::Unknown) force_finite(h.lhs);
    if (r == Status::Bottom) return Verdict::Satisfied;
    return r == Status::Finite ? Verdict::Affine : Verdict::Undecided;
  }
  if (r == Status::Bottom) return Verdict::Satisfied;
  if (l == Status::Bottom) {
    if (r == Status::Finite) return Verdict::Conflict;
    std::size_t unknown = 0, last = 0;
    for (std::size_t i = 0; i < h.rhs.exponents.size(); ++i) {
      if (h.rhs.exponents[i] > 0 && st[i] == Status::Unknown) {
        ++unknown;
        last = i;
      }
    }
    if (unknown == 1) {
      st[last] = Status::Bottom;
      changed = true;
      return Verdict::Satisfied;
    }
    return Verdict::Undecided;
  }
  if (r == Status::Finite) {
    force_finite(h.lhs);
    return Verdict::Affine;
  }
  return Verdict::Undecided;
}

LinearRow affine_row(const HalfSpace& h) {
  const std::size_t n = h.arity();
  LinearRow row;
  row.a.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    row.a[i] = Rational(static_cast<long>(h.lhs.exponents[i])) -
               Rational(static_cast<long>(h.rhs.exponents[i]));
  }
  row.b = h.rhs.coef.value() - h.lhs.coef.value();
  row.strict = h.strict;
  return row;
}

class PatternSearch {
public:
  explicit PatternSearch(const Polyhedron& p) : p_(p) {}

  std::optional<std::vector<QMax>> run() {
    return search(std::vector<Status>(p_.arity, Status::Unknown));
  }

  std::optional<std::vector<QMax>> run(const std::vector<bool>& pattern) {
    std::vector<Status> st(p_.arity);
    for (std::size_t i = 0; i < p_.arity; ++i) st[i] = pattern[i] ? Status::Bottom : Status::Finite;
    return search(std::move(st));
  }

private:
  std::optional<std::vector<QMax>> search(std::vector<Status> st) {
    std::vector<LinearRow> rows;
    const HalfSpace* undecided = nullptr;
    for (bool changed = true; changed;) {
      changed = false;
      rows.clear();
      undecided = nullptr;
      for (const auto& h : p_.constraints) {
        switch (propagate(h, st, changed)) {
          case Verdict::Conflict:
            return std::nullopt;
          case Verdict::Affine:
            rows.push_back(affine_row(h));
            break;
          case Verdict::Undecided:
            if (!undecided) undecided = &h;
            break;
          case Verdict::Satisfied:
            break;
        }
      }
    }
    auto solution = fm_solve(p_.arity, rows);
    if (!solution) return std::nullopt;
    if (!undecided) {
      std::vector<QMax> point(p_.arity);
      for (std::size_t i = 0; i < p_.arity; ++i) {
        if (st[i] == Status::Bottom) {
          point[i] = QMax::bottom();
        } else if (st[i] == Status::Finite) {
          point[i] = QMax((*solution)[i]);
        }
      }
      return point;
    }
    std::size_t var = 0;
    for (std::size_t i = 0; i < p_.arity; ++i) {
      if (undecided->rhs.exponents[i] > 0 && st[i] == Status::Unknown) {
        var = i;
        break;
      }
    }
    for (Status choice : {Status::Finite, Status::Bottom}) {
      std::vector<Status> next = st;
      next[var] = choice;
      if (auto w = search(std::move(next))) return w;
    }
    return std::nullopt;
  }

  const Polyhedron& p_;
};

// ---------------------------------------------------------------------------
// Simplification

Polyhedron with(const Polyhedron& p, const HalfSpace& h) {
  Polyhedron q = p;
  q.constraints.push_back(h);
  return q;
}

HalfSpace is_finite_constraint(std::size_t arity, std::size_t var) {
  SymMonomial x = constant_monomial(arity, QMax::one());
  x.exponents[var] = 1;
  return {x, constant_monomial(arity, QMax::bottom()), true};
}

SymMonomial coordinate(std::size_t arity, std::size_t var) {
  SymMonomial x = constant_monomial(arity, QMax::one());
  x.exponents[var] = 1;
  return x;
}

std::size_t variable_count(const HalfSpace& h) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < h.arity(); ++i) k += (h.lhs.exponents[i] | h.rhs.exponents[i]) != 0;
  return k;
}

std::size_t first_variable(const HalfSpace& h) {
  for (std::size_t i = 0; i < h.arity(); ++i) {
    if ((h.lhs.exponents[i] | h.rhs.exponents[i]) != 0) return i;
  }
  return h.arity();
}

// ---------------------------------------------------------------------------
// Rendering

std::string name_of(std::size_t i, std::span<const std::string> names) {
  return i < names.size() ? names[i] : "d" + std::to_string(i + 1);
}

/// Σ α_i x_i + c in conventional notation.
std::string affine(const Exponents& e, const Rational& c, bool show_zero,
                   std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (e[i] > 1) out += std::to_string(e[i]) + " ";
    out += name_of(i, names);
  }
  if (out.empty()) return show_zero || c != 0 ? rational_to_string(c) : "0";
  if (c > 0) out += " + " + rational_to_string(c);
  if (c < 0) out += " - " + rational_to_string(Rational(-c));
  return out;
}

std::string render_side(const SymMonomial& m, std::span<const std::string> names) {
  if (m.coef.is_bottom()) return "-inf";
  return affine(m.exponents, m.coef.value(), true, names);
}

}  // namespace

// ---------------------------------------------------------------------------
// Half-spaces

bool HalfSpace::contains(std::span<const QMax> point) const {
  const QMax l = lhs.evaluate(point);
  const QMax r = rhs.evaluate(point);
  return strict ? l > r : l >= r;
}

HalfSpace half_space(const SymMonomial& lhs, const SymMonomial& rhs) {
  check_arity(lhs.arity(), rhs.arity());
  return {lhs, rhs, false};
}

HalfSpace is_bottom(std::size_t arity, std::size_t var) {
  return {constant_monomial(arity, QMax::bottom()), coordinate(arity, var), false};
}

HalfSpace negate(const HalfSpace& h) { return {h.rhs, h.lhs, !h.strict}; }

HalfSpace canonical(const HalfSpace& h) {
  check_arity(h.lhs.arity(), h.rhs.arity());
  const std::size_t n = h.arity();
  if (h.strict) {
    if (h.lhs.coef.is_bottom()) return canonical_false(n);
    if (h.rhs.coef.is_bottom()) {
      if (!has_variables(h.lhs)) return canonical_true(n);
      return {support_of(h.lhs), constant_monomial(n, QMax::bottom()), true};
    }
    HalfSpace r = shifted(h);
    if (r.lhs.exponents == r.rhs.exponents) {
      if (r.rhs.coef >= QMax::one()) return canonical_false(n);
      if (!has_variables(r.lhs)) return canonical_true(n);
      return {support_of(r.lhs), constant_monomial(n, QMax::bottom()), true};
    }
    return r;
  }
  if (h.rhs.coef.is_bottom()) return canonical_true(n);
  if (h.lhs.coef.is_bottom()) {
    if (!has_variables(h.rhs)) return canonical_false(n);
    return {constant_monomial(n, QMax::bottom()), support_of(h.rhs), false};
  }
  HalfSpace r = shifted(h);
  if (r.lhs.exponents == r.rhs.exponents && r.rhs.coef <= QMax::one()) return canonical_true(n);
  if (!has_variables(r.lhs) && !has_variables(r.rhs)) {
    return r.rhs.coef <= QMax::one() ? canonical_true(n) : canonical_false(n);
  }
  return r;
}

bool trivially_true(const HalfSpace& h) { return canonical(h) == canonical_true(h.arity()); }

bool trivially_false(const HalfSpace& h) { return canonical(h) == canonical_false(h.arity()); }

// ---------------------------------------------------------------------------
// Polyhedra

bool Polyhedron::contains(std::span<const QMax> point) const {
  check_arity(arity, point.size());
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const HalfSpace& h) { return h.contains(point); });
}

Polyhedron normalized(const Polyhedron& p) {
  Polyhedron out{p.arity, {}};
  const HalfSpace yes = canonical_true(p.arity);
  const HalfSpace no = canonical_false(p.arity);
  for (const auto& h : p.constraints) {
    check_arity(p.arity, h.arity());
    HalfSpace c = canonical(h);
    if (c == yes) continue;
    if (c == no) return {p.arity, {no}};
    out.constraints.push_back(std::move(c));
  }
  std::sort(out.constraints.begin(), out.constraints.end());
  out.constraints.erase(std::unique(out.constraints.begin(), out.constraints.end()),
                        out.constraints.end());
  return out;
}

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
  check_arity(a.arity, b.arity);
  Polyhedron r = a;
  r.constraints.insert(r.constraints.end(), b.constraints.begin(), b.constraints.end());
  return normalized(r);
}

std::optional<std::vector<QMax>> poly_witness(const Polyhedron& p) {
  const Polyhedron q = normalized(p);
  auto w = PatternSearch(q).run();
  if (w && !p.contains(*w)) throw Error("witness check failed (internal error)");
  return w;
}

Polyhedron intersect_normalized(const Polyhedron& a, const Polyhedron& b) {
  check_arity(a.arity, b.arity);
  const auto is_false = [](const Polyhedron& p) {
    return p.constraints.size() == 1 && trivially_false(p.constraints.front());
  };
  if (is_false(a)) return a;
  if (is_false(b)) return b;
  Polyhedron r{a.arity, {}};
  r.constraints.reserve(a.constraints.size() + b.constraints.size());
  std::set_union(a.constraints.begin(), a.constraints.end(), b.constraints.begin(),
                 b.constraints.end(), std::back_inserter(r.constraints));
  return r;
}

std::optional<std::vector<QMax>> poly_witness_in(const Polyhedron& p,
                                                 const std::vector<bool>& pattern) {
  return normalized_witness_in(normalized(p), pattern);
}

std::optional<std::vector<QMax>> normalized_witness_in(const Polyhedron& p,
                                                       const std::vector<bool>& pattern) {
  check_arity(p.arity, pattern.size());
  const Polyhedron& q = p;
  auto w = PatternSearch(q).run(pattern);
  if (w && !p.contains(*w)) throw Error("witness check failed (internal error)");
  return w;
}

bool poly_is_empty(const Polyhedron& p) { return !poly_witness(p).has_value(); }

bool poly_subset(const Polyhedron& a, const Polyhedron& b) {
  check_arity(a.arity, b.arity);
  const Polyhedron na = normalized(a);
  for (const auto& h : normalized(b).constraints) {
    if (std::binary_search(na.constraints.begin(), na.constraints.end(), h)) continue;
    if (!poly_is_empty(with(na, negate(h)))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Unions

bool SemiPolySet::contains(std::span<const QMax> point) const {
  check_arity(arity, point.size());
  return std::any_of(parts.begin(), parts.end(),
                     [&](const Polyhedron& p) { return p.contains(point); });
}

SemiPolySet pruned(const SemiPolySet& s, const SetOptions& options) {
  std::vector<Polyhedron> parts;
  for (const auto& p : s.parts) {
    check_arity(s.arity, p.arity);
    Polyhedron q = normalized(p);
    if (std::find(parts.begin(), parts.end(), q) != parts.end()) continue;
    if (poly_is_empty(q)) continue;
    parts.push_back(std::move(q));
  }
  if (options.prune_containment) {
    std::vector<bool> removed(parts.size(), false);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = 0; j < parts.size(); ++j) {
        if (i != j && !removed[j] && poly_subset(parts[i], parts[j])) {
          removed[i] = true;
          break;
        }
      }
    }
    std::vector<Polyhedron> kept;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (!removed[i]) kept.push_back(std::move(parts[i]));
    }
    parts = std::move(kept);
  }
  return {s.arity, std::move(parts)};
}

SemiPolySet sps_union(const SemiPolySet& a, const SemiPolySet& b, const SetOptions& options) {
  check_arity(a.arity, b.arity);
  SemiPolySet r = a;
  r.parts.insert(r.parts.end(), b.parts.begin(), b.parts.end());
  return pruned(r, options);
}

SemiPolySet sps_intersect(const SemiPolySet& a, const SemiPolySet& b, const SetOptions& options) {
  check_arity(a.arity, b.arity);
  SemiPolySet r{a.arity, {}};
  for (const auto& pa : a.parts) {
    for (const auto& pb : b.parts) r.parts.push_back(intersect(pa, pb));
  }
  return pruned(r, options);
}

bool sps_is_empty(const SemiPolySet& s) {
  return std::all_of(s.parts.begin(), s.parts.end(), [](const Polyhedron& p) { return poly_is_empty(p); });
}

bool sps_contains(const SemiPolySet& s, std::span<const QMax> point) { return s.contains(point); }

std::optional<std::vector<QMax>> sps_witness(const SemiPolySet& s) {
  for (const auto& p : s.parts) {
    if (auto w = poly_witness(p)) return w;
  }
  return std::nullopt;
}

SemiPolySet set_poly_le(const SymPoly& p, const SymPoly& q) { return expr_poly_le(p, q).expand(); }

SemiPolySet set_poly_eq(const SymPoly& p, const SymPoly& q) { return expr_poly_eq(p, q).expand(); }

SemiPolySet set_poly_is_zero(const SymPoly& p) { return expr_poly_is_zero(p).expand(); }

// ---------------------------------------------------------------------------
// Simplification

Polyhedron simplified(const Polyhedron& input) {
  const std::size_t n = input.arity;
  const Polyhedron p = normalized(input);
  const auto w = poly_witness(p);
  if (!w) return {n, {canonical_false(n)}};

  enum class Fix { None, Bottom, Finite, Value };
  std::vector<Fix> fix(n, Fix::None);
  std::vector<Rational> value(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (poly_is_empty(with(p, is_finite_constraint(n, i)))) {
      fix[i] = Fix::Bottom;
      continue;
    }
    if (!poly_is_empty(with(p, is_bottom(n, i)))) continue;
    fix[i] = Fix::Finite;
    const QMax a = (*w)[i];
    const SymMonomial x = coordinate(n, i);
    const SymMonomial c = constant_monomial(n, a);
    if (poly_is_empty(with(p, {x, c, true})) && poly_is_empty(with(p, {c, x, true}))) {
      fix[i] = Fix::Value;
      value[i] = a.value();
    }
  }

  auto substitute = [&](SymMonomial m) {
    if (m.coef.is_bottom()) return m;
    Rational coef = m.coef.value();
    for (std::size_t i = 0; i < n; ++i) {
      if (m.exponents[i] == 0) continue;
      if (fix[i] == Fix::Bottom) return constant_monomial(n, QMax::bottom());
      if (fix[i] == Fix::Value) {
        coef += value[i] * m.exponents[i];
        m.exponents[i] = 0;
      }
    }
    m.coef = QMax(coef);
    return m;
  };

  std::vector<HalfSpace> pinned, rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (fix[i] == Fix::Bottom) pinned.push_back(is_bottom(n, i));
    if (fix[i] == Fix::Value) {
      const SymMonomial x = coordinate(n, i);
      const SymMonomial c = constant_monomial(n, QMax(value[i]));
      pinned.push_back(canonical({x, c, false}));
      pinned.push_back(canonical({c, x, false}));
    }
  }
  for (const auto& h : p.constraints) {
    HalfSpace s{substitute(h.lhs), substitute(h.rhs), h.strict};
    for (std::size_t i = 0; i < n; ++i) {
      if (fix[i] != Fix::Finite) continue;
      if (s.lhs.coef.is_finite() && s.rhs.coef.is_finite()) {
        const auto k = std::min(s.lhs.exponents[i], s.rhs.exponents[i]);
        s.lhs.exponents[i] -= k;
        s.rhs.exponents[i] -= k;
      } else if (s.lhs.coef.is_bottom() && !s.strict) {
        s.rhs.exponents[i] = 0;
      } else if (s.rhs.coef.is_bottom() && s.strict) {
        s.lhs.exponents[i] = 0;
      }
    }
    HalfSpace c = canonical(s);
    if (trivially_true(c)) continue;
    rest.push_back(std::move(c));
  }
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());

  // Drop redundant constraints, the ones with most coordinates first.
  std::stable_sort(rest.begin(), rest.end(), [](const HalfSpace& a, const HalfSpace& b) {
    return variable_count(a) > variable_count(b);
  });
  for (std::size_t i = 0; i < rest.size();) {
    Polyhedron others{n, pinned};
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (j != i) others.constraints.push_back(rest[j]);
    }
    if (poly_is_empty(with(others, negate(rest[i])))) {
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  Polyhedron out{n, pinned};
  out.constraints.insert(out.constraints.end(), rest.begin(), rest.end());
  return normalized(out);
}

SemiPolySet simplified(const SemiPolySet& s) {
  SemiPolySet r{s.arity, {}};
  for (const auto& p : s.parts) {
    Polyhedron q = simplified(p);
    if (q.constraints.size() == 1 && trivially_false(q.constraints.front())) continue;
    r.parts.push_back(std::move(q));
  }
  SetOptions options;
  options.prune_containment = true;
  r = pruned(r, options);
  std::sort(r.parts.begin(), r.parts.end(), [](const Polyhedron& a, const Polyhedron& b) {
    return a.constraints < b.constraints;
  });
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render(const Polyhedron& p, std::span<const std::string> names) {
  const Polyhedron q = normalized(p);
  if (q.constraints.empty()) return "true";
  if (q.constraints.size() == 1 && trivially_false(q.constraints.front())) return "false";
  struct Item {
    std::size_t key;
    std::string text;
  };
  std::vector<Item> items;
  std::vector<bool> used(q.constraints.size(), false);
  for (std::size_t i = 0; i < q.constraints.size(); ++i) {
    if (used[i]) continue;
    const HalfSpace& h = q.constraints[i];
    used[i] = true;
    const std::size_t key = first_variable(h);
    if (h.lhs.coef.is_bottom()) {
      items.push_back({key, affine(h.rhs.exponents, 0, false, names) + " = -inf"});
      continue;
    }
    if (h.strict) {
      items.push_back({key, render_side(h.lhs, names) + " > " + render_side(h.rhs, names)});
      continue;
    }
    const HalfSpace reverse = canonical({h.rhs, h.lhs, false});
    auto it = std::lower_bound(q.constraints.begin(), q.constraints.end(), reverse);
    if (it != q.constraints.end() && *it == reverse) {
      used[static_cast<std::size_t>(it - q.constraints.begin())] = true;
      // Put the side with coordinates first: x = a, or x = y + a.
      if (!has_variables(h.lhs)) {
        items.push_back({key, render_side(reverse.lhs, names) + " = " + render_side(reverse.rhs, names)});
      } else {
        items.push_back({key, render_side(h.lhs, names) + " = " + render_side(h.rhs, names)});
      }
      continue;
    }
    if (!has_variables(h.lhs)) {
      // c ≥ m, written m <= -c'.
      const Rational bound = -h.rhs.coef.value();
      items.push_back({key, affine(h.rhs.exponents, 0, false, names) + " <= " + rational_to_string(bound)});
      continue;
    }
    items.push_back({key, render_side(h.lhs, names) + " >= " + render_side(h.rhs, names)});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.key < b.key; });
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item.text;
  }
  return out;
}

std::string render(const SemiPolySet& s, std::span<const std::string> names) {
  if (s.parts.empty()) return "empty";
  std::string out;
  for (const auto& p : s.parts) {
    if (!out.empty()) out += "\n";
    out += render(p, names);
  }
  return out;
}

}  // namespace tropreal
