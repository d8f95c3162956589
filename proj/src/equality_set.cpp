// SPDX-License-Identifier: Apache-2.0
#include "tropreal/equality_set.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "tropreal/errors.hpp"

namespace tropreal {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

SymPoly constant(std::size_t arity, const QMax& c) { return SymPoly::constant(arity, c); }

}  // namespace

CanonicalUGM rewrite(const CanonicalUGM& g, std::uint64_t period, std::uint64_t kappa) {
  const TransientForm t = rebase(to_transient_form(g), period, kappa);
  CanonicalUGM out;
  out.kappa = t.kappa;
  out.period = t.period;
  for (const auto& v : t.transient) out.transient.push_back(v.constant_value());
  out.tails.assign(period, {QMax::bottom(), QMax::bottom()});
  for (const auto& tail : t.tails) {
    auto& slot = out.tails[tail.residue];
    if (!slot.first.is_bottom()) throw Error("rewrite: two tails on one residue (internal error)");
    slot = {tail.u.constant_value(), tail.rate.constant_value()};
  }
  return out;
}

AlignedPair align(const TransientForm& sym, const CanonicalUGM& conc) {
  const std::uint64_t c = std::lcm(sym.period, conc.period);
  const std::uint64_t kappa =
      std::max(ceil_div(sym.kappa * sym.period, c), ceil_div(conc.kappa * conc.period, c));
  AlignedPair pair{rebase(sym, c, kappa), rewrite(conc, c, kappa)};
  // Rebasing never lengthens past the requested κ, but keep both in step.
  const std::uint64_t k = std::max(pair.sym.kappa, pair.conc.kappa);
  if (pair.sym.kappa != k) pair.sym = rebase(pair.sym, c, k);
  if (pair.conc.kappa != k) pair.conc = rewrite(pair.conc, c, k);
  return pair;
}

namespace {

// Builds the factors either over all of QMax^n or over one bottom pattern:
// there the listed coordinates are -inf and every other one is finite, so
// monomials through a -inf coordinate vanish and {p = -inf} is decided.
struct Builder {
  const std::vector<bool>* pattern = nullptr;

  SymPoly restrict(const SymPoly& p) const {
    if (!pattern) return p;
    SymPoly out = SymPoly::zero(p.arity());
    for (const auto& [e, coef] : p.terms()) {
      bool vanishes = false;
      for (std::size_t i = 0; i < e.size() && !vanishes; ++i) vanishes = e[i] > 0 && (*pattern)[i];
      if (!vanishes) out.add_monomial(e, QMax(coef));
    }
    return out;
  }

  SetExpr is_zero(const SymPoly& p) const {
    if (!pattern) return expr_poly_is_zero(p);
    return p.is_zero() ? SetExpr::whole(p.arity()) : SetExpr::empty(p.arity());
  }

  SetExpr le(const SymPoly& p, const SymPoly& q) const {
    if (pattern && q.is_zero()) return is_zero(p);
    return expr_poly_le(p, q);
  }

  SetExpr eq(const SymPoly& p, const SymPoly& q) const {
    if (pattern && (p.is_zero() || q.is_zero())) return is_zero(poly_add(p, q));
    return expr_poly_eq(p, q);
  }

  SetExpr line_le(const SymPoly& u, const SymPoly& q, const QMax& u0, const QMax& q0) const {
    const std::size_t n = u.arity();
    return unite(is_zero(u), intersect(le(u, constant(n, u0)), le(q, constant(n, q0))));
  }

  SetExpr line_eq(const SymPoly& u, const SymPoly& q, const QMax& u0, const QMax& q0) const {
    const std::size_t n = u.arity();
    if (u0.is_bottom()) return is_zero(u);
    return intersect(eq(u, constant(n, u0)), eq(q, constant(n, q0)));
  }

  SetExpr convex_eq(const std::vector<Line>& lines, const QMax& u0, const QMax& q0) const {
    if (q0.is_bottom()) throw InvalidArgument("convex_eq_set needs a finite target rate");
    if (lines.empty()) throw InvalidArgument("convex_eq_set needs at least one line");
    const std::size_t n = lines.front().first.arity();
    std::vector<SetExpr> branches;
    for (std::size_t j = 0; j < lines.size(); ++j) {
      std::vector<SetExpr> factors{line_eq(lines[j].first, lines[j].second, u0, q0)};
      for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i != j) factors.push_back(line_le(lines[i].first, lines[i].second, u0, q0));
      }
      branches.push_back(SetExpr::all(n, std::move(factors)));
    }
    return SetExpr::any(n, std::move(branches));
  }

  EqualitySystem system(const AlignedPair& aligned) const {
    const TransientForm& s = aligned.sym;
    const CanonicalUGM& t = aligned.conc;
    const std::size_t n = s.arity;
    EqualitySystem out;
    out.aligned = aligned;
    for (std::size_t k = 0; k < s.transient.size(); ++k) {
      out.transient.push_back(eq(restrict(s.transient[k]), constant(n, t.transient[k])));
    }
    for (std::uint64_t j = 0; j < s.period; ++j) {
      std::vector<Line> lines;
      SymPoly u_sum = SymPoly::zero(n);
      SymPoly next_sum = SymPoly::zero(n);
      for (const auto& tail : s.tails) {
        if (tail.residue != j) continue;
        const SymPoly u = restrict(tail.u);
        if (pattern && u.is_zero()) continue;
        const SymPoly q = restrict(tail.rate);
        lines.emplace_back(u, q);
        u_sum = poly_add(u_sum, u);
        next_sum = poly_add(next_sum, poly_mul(u, q));
      }
      const auto& [u0, q0] = t.tails[j];
      if (u0.is_bottom()) {
        out.residues.push_back(is_zero(u_sum));
      } else if (q0.is_bottom()) {
        // u0 X^{κc+j} alone: the first coefficient matches and the rest vanish.
        out.residues.push_back(intersect(eq(u_sum, constant(n, u0)), is_zero(next_sum)));
      } else if (lines.empty()) {
        out.residues.push_back(SetExpr::empty(n));
      } else {
        out.residues.push_back(convex_eq(lines, u0, q0));
      }
    }
    return out;
  }
};

AlignedPair aligned_pair(const RatExpr& sym, const RatExpr& conc) {
  if (!conc.is_concrete()) throw ArityMismatch("the target series must be concrete");
  return align(to_transient_form(to_star_height_one(sym)), canonicalize(conc));
}

bool any_empty(const std::vector<SetExpr>& factors) {
  return std::any_of(factors.begin(), factors.end(),
                     [](const SetExpr& f) { return f.is_empty_union(); });
}

}  // namespace

SetExpr line_le_set(const SymPoly& u, const SymPoly& q, const QMax& u0, const QMax& q0) {
  return Builder{}.line_le(u, q, u0, q0);
}

SetExpr line_eq_set(const SymPoly& u, const SymPoly& q, const QMax& u0, const QMax& q0) {
  return Builder{}.line_eq(u, q, u0, q0);
}

SetExpr convex_eq_set(const std::vector<Line>& lines, const QMax& u0, const QMax& q0) {
  return Builder{}.convex_eq(lines, u0, q0);
}

SetExpr EqualitySystem::combined() const {
  std::vector<SetExpr> factors = transient;
  factors.insert(factors.end(), residues.begin(), residues.end());
  return SetExpr::all(aligned.sym.arity, std::move(factors));
}

EqualitySystem equality_system(const AlignedPair& aligned) { return Builder{}.system(aligned); }

EqualitySystem equality_system(const RatExpr& sym, const RatExpr& conc) {
  return equality_system(aligned_pair(sym, conc));
}

EqualitySystem pattern_system(const AlignedPair& aligned, const std::vector<bool>& pattern) {
  if (pattern.size() != aligned.sym.arity) throw ArityMismatch("bottom pattern has the wrong length");
  return Builder{&pattern}.system(aligned);
}

SetExpr pattern_set_expr(const AlignedPair& aligned, const std::vector<bool>& pattern) {
  const std::size_t n = aligned.sym.arity;
  const EqualitySystem system = pattern_system(aligned, pattern);
  if (any_empty(system.transient) || any_empty(system.residues)) return SetExpr::empty(n);
  Polyhedron bottoms{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (pattern[i]) bottoms.constraints.push_back(is_bottom(n, i));
  }
  return intersect(SetExpr::leaf(bottoms), system.combined());
}

std::vector<std::vector<bool>> bottom_patterns(std::size_t arity) {
  if (arity >= 32) throw DimensionCap("too many indeterminates to enumerate bottom patterns");
  std::vector<std::uint64_t> masks(std::uint64_t{1} << arity);
  std::iota(masks.begin(), masks.end(), std::uint64_t{0});
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) > std::popcount(b);
  });
  std::vector<std::vector<bool>> out;
  for (const auto mask : masks) {
    std::vector<bool> pattern(arity);
    for (std::size_t i = 0; i < arity; ++i) pattern[i] = (mask >> i) & 1;
    out.push_back(std::move(pattern));
  }
  return out;
}

SetExpr stratified_set_expr(const AlignedPair& aligned) {
  const std::size_t n = aligned.sym.arity;
  std::vector<SetExpr> parts;
  for (const auto& pattern : bottom_patterns(n)) {
    SetExpr part = pattern_set_expr(aligned, pattern);
    if (!part.is_empty_union()) parts.push_back(std::move(part));
  }
  return SetExpr::any(n, std::move(parts));
}

SetExpr equality_set_expr(const RatExpr& sym, const RatExpr& conc) {
  return equality_system(sym, conc).combined();
}

SetExpr stratified_set_expr(const RatExpr& sym, const RatExpr& conc) {
  return stratified_set_expr(aligned_pair(sym, conc));
}

SemiPolySet equality_set(const AlignedPair& aligned, const SetOptions& options) {
  const std::size_t n = aligned.sym.arity;
  SemiPolySet all{n, {}};
  for (const auto& pattern : bottom_patterns(n)) {
    const SetExpr part = pattern_set_expr(aligned, pattern);
    if (part.is_empty_union()) continue;
    auto s = part.expand_in(pattern, SetOptions{false});
    all.parts.insert(all.parts.end(), s.parts.begin(), s.parts.end());
  }
  return pruned(all, options);
}

SemiPolySet equality_set(const RatExpr& sym, const RatExpr& conc, const SetOptions& options) {
  return equality_set(aligned_pair(sym, conc), options);
}

std::optional<std::vector<QMax>> equality_witness(const AlignedPair& aligned) {
  for (const auto& pattern : bottom_patterns(aligned.sym.arity)) {
    const SetExpr part = pattern_set_expr(aligned, pattern);
    if (part.is_empty_union()) continue;
    if (auto w = part.witness_in(pattern)) return w;
  }
  return std::nullopt;
}

std::optional<std::vector<QMax>> equality_witness(const RatExpr& sym, const RatExpr& conc) {
  return equality_witness(aligned_pair(sym, conc));
}

}  // namespace tropreal
