// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropreal/sympoly.hpp"

namespace tropreal {

/// {x : lhs(x) ≥ rhs(x)} in QMax^n, with -inf ≥ -inf true.
///
/// `strict` turns it into {lhs(x) > rhs(x)} (lhs finite, and rhs = -inf or
/// smaller). The decision procedures accept strict constraints so that
/// containment can be tested through complements; the set constructions
/// never produce them.
struct HalfSpace {
  SymMonomial lhs;
  SymMonomial rhs;
  bool strict = false;

  std::size_t arity() const { return lhs.arity(); }
  bool contains(std::span<const QMax> point) const;

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
  friend auto operator<=>(const HalfSpace&, const HalfSpace&) = default;
};

/// m ≥ m'.
HalfSpace half_space(const SymMonomial& lhs, const SymMonomial& rhs);
/// x_i = -inf, written -inf ≥ x_i.
HalfSpace is_bottom(std::size_t arity, std::size_t var);
/// The complement, as a strict half-space.
HalfSpace negate(const HalfSpace& h);

/// Equivalent half-space in canonical form: lhs coefficient 0 when finite,
/// exponents divided by their gcd, and for `-inf ≥ m` only the support of m
/// kept. Two half-spaces with the same canonical form denote the same set.
HalfSpace canonical(const HalfSpace& h);

/// True when h holds at every point; false when it is recognizably empty.
bool trivially_true(const HalfSpace& h);
bool trivially_false(const HalfSpace& h);

/// Intersection of half-spaces; no constraints means the whole space.
struct Polyhedron {
  std::size_t arity = 0;
  std::vector<HalfSpace> constraints;

  bool contains(std::span<const QMax> point) const;

  friend bool operator==(const Polyhedron&, const Polyhedron&) = default;
};

/// Canonical constraints, sorted and deduplicated; trivially true ones
/// dropped, and a single `-inf ≥ 0` when one is trivially false.
Polyhedron normalized(const Polyhedron& p);
Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);

/// Finite union of polyhedra; no parts means the empty set.
struct SemiPolySet {
  std::size_t arity = 0;
  std::vector<Polyhedron> parts;

  static SemiPolySet whole(std::size_t arity) { return {arity, {Polyhedron{arity, {}}}}; }
  static SemiPolySet empty(std::size_t arity) { return {arity, {}}; }
  bool contains(std::span<const QMax> point) const;

  friend bool operator==(const SemiPolySet&, const SemiPolySet&) = default;
};

struct SetOptions {
  /// Also drop parts contained in another part (quadratic in the number of
  /// parts).
  bool prune_containment = false;
};

SemiPolySet sps_union(const SemiPolySet& a, const SemiPolySet& b, const SetOptions& options = {});
SemiPolySet sps_intersect(const SemiPolySet& a, const SemiPolySet& b,
                          const SetOptions& options = {});

/// Empty parts removed, parts normalized and deduplicated.
SemiPolySet pruned(const SemiPolySet& s, const SetOptions& options = {});

bool poly_is_empty(const Polyhedron& p);
bool sps_is_empty(const SemiPolySet& s);
bool sps_contains(const SemiPolySet& s, std::span<const QMax> point);

/// a ⊆ b, decided through the emptiness of a ∩ ¬h for each constraint h of b.
bool poly_subset(const Polyhedron& a, const Polyhedron& b);

/// A point of p found on the first feasible bottom pattern (finite
/// coordinates tried before -inf).
std::optional<std::vector<QMax>> poly_witness(const Polyhedron& p);
/// A point of p whose -inf coordinates are exactly those set in `pattern`.
std::optional<std::vector<QMax>> poly_witness_in(const Polyhedron& p, const std::vector<bool>& pattern);
/// Same, for p already normalized.
std::optional<std::vector<QMax>> normalized_witness_in(const Polyhedron& p,
                                                       const std::vector<bool>& pattern);
/// intersect() for normalized a and b, by merging.
Polyhedron intersect_normalized(const Polyhedron& a, const Polyhedron& b);
std::optional<std::vector<QMax>> sps_witness(const SemiPolySet& s);

SemiPolySet set_poly_le(const SymPoly& p, const SymPoly& q);
SemiPolySet set_poly_eq(const SymPoly& p, const SymPoly& q);
SemiPolySet set_poly_is_zero(const SymPoly& p);

/// Equivalent polyhedron with constant and bottom coordinates substituted,
/// written as x = a or x = -inf, common powers of finite coordinates
/// cancelled, and redundant constraints removed. Empty input gives the
/// canonical empty polyhedron.
Polyhedron simplified(const Polyhedron& p);
/// Each part simplified, then empty and contained parts removed.
SemiPolySet simplified(const SemiPolySet& s);

/// Conventional affine notation, e.g. `u1 = -1, v1 = 1, u2 = 0, v2 <= 1`.
/// Parts are separated by newlines; the empty set renders as `empty` and the
/// whole space as `true`.
std::string render(const Polyhedron& p, std::span<const std::string> names = {});
std::string render(const SemiPolySet& s, std::span<const std::string> names = {});

}  // namespace tropreal
