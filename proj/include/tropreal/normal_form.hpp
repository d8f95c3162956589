// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tropreal/series_expr.hpp"

namespace tropreal {

/// A polynomial in X with coefficients in K[Σ], keyed by degree.
using XPoly = std::map<std::uint64_t, Coef>;

/// P · (q X^c)* with c taken from the enclosing form. A zero rate makes the
/// term the plain polynomial P.
struct StarTerm {
  XPoly poly;
  Coef rate;
};

/// ⊕_i P_i (q_i X^c)*, c ≥ 1. At most one term per rate.
struct StarHeightOne {
  std::size_t arity = 0;
  std::uint64_t period = 1;
  std::vector<StarTerm> terms;
};

/// u X^residue (q X^c)* inside a transient form.
struct Tail {
  Coef u;
  std::uint64_t residue = 0;
  Coef rate;
};

/// P ⊕ X^{κc} ⊕_i u_i X^{μ_i} (q_i X^c)*, with deg P < κc and every μ_i < c.
/// `transient` is the dense coefficient table of P (length κc). At most one
/// tail per (residue, rate) pair and no tail with u = 𝟘.
struct TransientForm {
  std::size_t arity = 0;
  std::uint64_t kappa = 0;
  std::uint64_t period = 1;
  std::vector<Coef> transient;
  std::vector<Tail> tails;

  Coef coefficient(std::uint64_t k) const;
};

/// Merge of ultimately geometric series, one geometric term per residue:
/// ⟨S, X^{(k+κ)c+j}⟩ = u_j ⊗ q_j^k for all k ≥ 0 and 0 ≤ j < c.
///
/// `canonicalize` returns the form with minimal c and then minimal κ. A
/// residue whose tail is identically bottom stores (-inf, -inf).
struct CanonicalUGM {
  std::uint64_t kappa = 0;
  std::uint64_t period = 1;
  std::vector<QMax> transient;
  std::vector<std::pair<QMax, QMax>> tails;

  QMax coefficient(std::uint64_t k) const;

  friend bool operator==(const CanonicalUGM&, const CanonicalUGM&) = default;
};

StarHeightOne to_star_height_one(const RatExpr& e);

/// Smallest κ ≥ kappa_min for which s can be written in transient form with
/// its own period.
TransientForm to_transient_form(const StarHeightOne& s, std::uint64_t kappa_min = 0);

/// Rewrites t with period `period` (a multiple of t.period) and κ ≥ kappa_min.
TransientForm rebase(const TransientForm& t, std::uint64_t period, std::uint64_t kappa_min = 0);

/// Concrete forms only.
CanonicalUGM canonicalize(const TransientForm& t);
CanonicalUGM canonicalize(const RatExpr& e);
TransientForm to_transient_form(const CanonicalUGM& g);

/// k ↦ ⟨T, X^{kc+j}⟩. Throws InvalidArgument unless 0 ≤ j < c.
TransientForm undersample(const TransientForm& t, std::uint64_t j, std::uint64_t c);
CanonicalUGM undersample(const CanonicalUGM& g, std::uint64_t j, std::uint64_t c);
SeriesStream undersample(const SeriesStream& s, std::uint64_t j, std::uint64_t c);

/// Coefficient kc+j of the result is coefficient k of parts[j].
/// Throws InvalidArgument on an empty list.
TransientForm merge(std::span<const TransientForm> parts);
CanonicalUGM merge(std::span<const CanonicalUGM> parts);
SeriesStream merge(std::span<const SeriesStream> parts);

/// X^{-m} T: coefficient k of the result is coefficient m+k of the input.
TransientForm shift(const TransientForm& t, std::uint64_t m);
CanonicalUGM shift(const CanonicalUGM& g, std::uint64_t m);
SeriesStream shift(const SeriesStream& s, std::uint64_t m);

/// Exact equality of concrete series, by comparing canonical forms rewritten
/// to a common (κ, c).
bool series_equal(const CanonicalUGM& a, const CanonicalUGM& b);
bool series_equal(const RatExpr& a, const RatExpr& b);

RatExpr to_expr(const StarHeightOne& s);
RatExpr to_expr(const TransientForm& t);
RatExpr to_expr(const CanonicalUGM& g);

std::string to_string(const StarHeightOne& s, std::span<const std::string> names = {});
std::string to_string(const TransientForm& t, std::span<const std::string> names = {});
std::string to_string(const CanonicalUGM& g);

}  // namespace tropreal
