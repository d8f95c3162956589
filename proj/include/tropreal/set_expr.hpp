// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tropreal/semipoly.hpp"

namespace tropreal {

/// An unexpanded semi-polyhedral set: polyhedra combined by finite
/// intersections and unions. Distributing an intersection of unions over
/// its factors is exponential, so membership is evaluated on the tree and
/// `expand` prunes infeasible branches while it distributes.
class SetExpr {
public:
  enum class Kind { Leaf, All, Any };

  static SetExpr leaf(const Polyhedron& p);
  static SetExpr all(std::size_t arity, std::vector<SetExpr> children);
  static SetExpr any(std::size_t arity, std::vector<SetExpr> children);
  static SetExpr whole(std::size_t arity) { return leaf(Polyhedron{arity, {}}); }
  static SetExpr empty(std::size_t arity) { return any(arity, {}); }
  static SetExpr from_set(const SemiPolySet& s);

  Kind kind() const noexcept;
  std::size_t arity() const noexcept;
  /// Leaf nodes only.
  const Polyhedron& polyhedron() const;
  /// All and Any nodes.
  const std::vector<SetExpr>& children() const;

  bool is_whole() const;
  bool is_empty_union() const;

  bool contains(std::span<const QMax> point) const;

  /// Equivalent finite union of polyhedra: nonempty, normalized, and
  /// pairwise distinct parts.
  SemiPolySet expand(const SetOptions& options = {}) const;

  /// A point of the first nonempty part met by the same search, without
  /// expanding the rest.
  std::optional<std::vector<QMax>> witness() const;
  bool is_empty() const { return !witness().has_value(); }

  /// As expand, but a branch is dropped when it has no point whose -inf
  /// coordinates are exactly those set in `pattern`. The parts are closed
  /// polyhedra and may reach outside that stratum.
  SemiPolySet expand_in(const std::vector<bool>& pattern, const SetOptions& options = {}) const;
  /// A point with exactly that bottom pattern.
  std::optional<std::vector<QMax>> witness_in(const std::vector<bool>& pattern) const;

private:
  struct Node;
  explicit SetExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

SetExpr intersect(const SetExpr& a, const SetExpr& b);
SetExpr unite(const SetExpr& a, const SetExpr& b);

/// {m ≤ q}.
SetExpr expr_monomial_le(const SymMonomial& m, const SymPoly& q);
/// {m = m'}.
SetExpr expr_monomial_eq(const SymMonomial& m, const SymMonomial& m2);
SetExpr expr_poly_le(const SymPoly& p, const SymPoly& q);
SetExpr expr_poly_eq(const SymPoly& p, const SymPoly& q);
SetExpr expr_poly_is_zero(const SymPoly& p);

}  // namespace tropreal
