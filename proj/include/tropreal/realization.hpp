// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tropreal/equality_set.hpp"
#include "tropreal/series_expr.hpp"

namespace tropreal {

/// Largest dimension accepted by the enumerations unless the caller raises it.
inline constexpr std::size_t kDefaultDimensionCap = 3;

/// (c, A, b) with c a row, A square and b a column, all of size N.
struct Realization {
  std::size_t dim = 0;
  std::vector<QMax> c;
  std::vector<std::vector<QMax>> A;
  std::vector<QMax> b;

  static Realization bottom(std::size_t dim);

  /// c_1..c_N, then A_11, A_12, …, A_NN row by row, then b_1..b_N.
  std::vector<QMax> flatten() const;
  static Realization unflatten(std::size_t dim, std::span<const QMax> point);

  /// c ⊗ A^k ⊗ b by max-plus matrix arithmetic.
  QMax coefficient(std::uint64_t k) const;

  friend bool operator==(const Realization&, const Realization&) = default;
};

/// Indeterminate names in flattening order: c1.., A11.., b1...
std::vector<std::string> realization_names(std::size_t dim);

/// Graph nodes: 0 is `in`, 1..N the states, N+1 `out`.
struct Path {
  std::vector<std::size_t> states;  // visited states in order
  SymMonomial weight;               // c_first, the A entries, b_last
  std::uint64_t length = 0;         // number of A arcs, the power of X
};

struct Circuit {
  std::vector<std::size_t> states;  // smallest state first
  SymMonomial weight;
  std::uint64_t length = 0;
};

/// Elementary in→out paths. Throws DimensionCap above `cap`.
std::vector<Path> enumerate_paths(std::size_t dim, std::size_t cap = kDefaultDimensionCap);
/// One elementary circuit per conjugacy class.
std::vector<Circuit> enumerate_circuits(std::size_t dim, std::size_t cap = kDefaultDimensionCap);

/// Subsets (as sorted indices into `circuits`, ∅ included) whose circuits
/// together with the path form a connected graph.
std::vector<std::vector<std::size_t>> accessible_subsets(const Path& path,
                                                         const std::vector<Circuit>& circuits);

/// ⊕_π w(π) ⊕_{C accessible from π} ⊗_{γ∈C} w(γ) (w(γ))*, with w(γ) the
/// circuit weight times X^length, over realization_names(dim).
RatExpr universal_series(std::size_t dim, std::size_t cap = kDefaultDimensionCap);

RatExpr recognized_series(const Realization& r, std::size_t cap = kDefaultDimensionCap);

/// A symbolic expression with named indeterminates, used in place of the
/// universal series for structured problems.
struct Template {
  std::vector<std::string> names;
  RatExpr expr;
};

/// First non-empty line not starting with '#': the indeterminates separated
/// by blanks; the remaining lines: the expression. Throws ParseError.
Template parse_template(std::string_view text);

/// {universal_series(dim) = target} over QMax^(2N+N²), or {tpl = target}
/// over the template's indeterminates.
SetExpr realization_set_expr(const RatExpr& target, std::size_t dim,
                             const std::optional<Template>& tpl = std::nullopt,
                             std::size_t cap = kDefaultDimensionCap);
SemiPolySet realization_set(const RatExpr& target, std::size_t dim,
                            const std::optional<Template>& tpl = std::nullopt,
                            std::size_t cap = kDefaultDimensionCap,
                            const SetOptions& options = {});
/// One point of the realization set, in the same coordinates.
std::optional<std::vector<QMax>> realization_witness(const RatExpr& target, std::size_t dim,
                                                     const std::optional<Template>& tpl = std::nullopt,
                                                     std::size_t cap = kDefaultDimensionCap);

/// Exact: compares canonical forms.
bool verify(const Realization& r, const RatExpr& target, std::size_t cap = kDefaultDimensionCap);

/// Smallest N ≤ max_dim with a realization, and a verified witness.
std::optional<std::pair<std::size_t, Realization>> minimal_realization(
    const RatExpr& target, std::size_t max_dim, std::size_t cap = kDefaultDimensionCap);

}  // namespace tropreal
