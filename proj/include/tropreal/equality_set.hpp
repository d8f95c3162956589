// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "tropreal/normal_form.hpp"
#include "tropreal/set_expr.hpp"

namespace tropreal {

/// A symbolic transient form and a concrete series written with the same
/// (κ, c). `conc` obeys the one-term-per-residue law of CanonicalUGM but its
/// (κ, c) need not be minimal.
struct AlignedPair {
  TransientForm sym;
  CanonicalUGM conc;
};

/// c = lcm of the two periods, κ = the larger transient in whole blocks of c.
AlignedPair align(const TransientForm& sym, const CanonicalUGM& conc);

/// The same series as g with period `period` (a multiple of g.period) and
/// transient length at least kappa·period.
CanonicalUGM rewrite(const CanonicalUGM& g, std::uint64_t period, std::uint64_t kappa);

/// Lines are pairs (u, q) denoting u (q X^c)*.
using Line = std::pair<SymPoly, SymPoly>;

/// {u = 𝟘} ∪ ({u ≤ u0} ∩ {q ≤ q0}).
SetExpr line_le_set(const SymPoly& u, const SymPoly& q, const QMax& u0, const QMax& q0);
/// {u = u0} ∩ {q = q0}, or {u = 𝟘} when u0 = -inf.
SetExpr line_eq_set(const SymPoly& u, const SymPoly& q, const QMax& u0, const QMax& q0);
/// {⊕ lines = u0 (q0 X^c)*} for finite q0.
SetExpr convex_eq_set(const std::vector<Line>& lines, const QMax& u0, const QMax& q0);

/// The factors whose intersection is {sym = conc}: one per transient
/// position, then one per residue.
struct EqualitySystem {
  AlignedPair aligned;
  std::vector<SetExpr> transient;
  std::vector<SetExpr> residues;

  SetExpr combined() const;
};

EqualitySystem equality_system(const AlignedPair& aligned);
EqualitySystem equality_system(const RatExpr& sym, const RatExpr& conc);

/// The factors for points whose -inf coordinates are exactly those set in
/// `pattern`. The -inf constraints themselves are left out.
EqualitySystem pattern_system(const AlignedPair& aligned, const std::vector<bool>& pattern);

/// {x_i = -inf for i in pattern} ∩ the pattern system. Every point of it is
/// in the equality set, and so is every point of the equality set whose
/// -inf coordinates are exactly the pattern.
SetExpr pattern_set_expr(const AlignedPair& aligned, const std::vector<bool>& pattern);

/// The equality set as the union of its pattern sets, sparsest first.
SetExpr stratified_set_expr(const AlignedPair& aligned);
SetExpr stratified_set_expr(const RatExpr& sym, const RatExpr& conc);

/// {d : evaluate_at(sym, d) and conc denote the same series}, unexpanded.
SetExpr equality_set_expr(const RatExpr& sym, const RatExpr& conc);

/// All bottom patterns of the given length, most -inf coordinates first.
std::vector<std::vector<bool>> bottom_patterns(std::size_t arity);

/// The equality set as a finite union of nonempty polyhedra, expanded
/// pattern by pattern.
SemiPolySet equality_set(const AlignedPair& aligned, const SetOptions& options = {});
SemiPolySet equality_set(const RatExpr& sym, const RatExpr& conc, const SetOptions& options = {});

/// A point of the equality set from the sparsest pattern that has one.
std::optional<std::vector<QMax>> equality_witness(const AlignedPair& aligned);
std::optional<std::vector<QMax>> equality_witness(const RatExpr& sym, const RatExpr& conc);

}  // namespace tropreal
