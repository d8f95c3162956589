// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tropreal/qmax.hpp"

namespace tropreal {

using Exponents = std::vector<std::uint32_t>;

/// u · x_1^{α_1} ··· x_n^{α_n}; in conventional notation u + Σ α_i x_i.
/// A bottom coefficient makes this the zero monomial.
struct SymMonomial {
  QMax coef;
  Exponents exponents;

  std::size_t arity() const { return exponents.size(); }
  bool is_zero() const { return coef.is_bottom(); }

  /// Evaluation with bottom absorption: any x_i = -inf with α_i > 0 gives -inf.
  QMax evaluate(std::span<const QMax> point) const;

  friend bool operator==(const SymMonomial&, const SymMonomial&) = default;
  friend auto operator<=>(const SymMonomial&, const SymMonomial&) = default;
};

/// A tropical polynomial in K[Σ]: at most one monomial per exponent vector,
/// never a bottom coefficient. The empty polynomial is 𝟘.
class SymPoly {
public:
  explicit SymPoly(std::size_t arity = 0) : arity_(arity) {}

  static SymPoly zero(std::size_t arity) { return SymPoly(arity); }
  static SymPoly constant(std::size_t arity, const QMax& c);
  static SymPoly one(std::size_t arity) { return constant(arity, QMax::one()); }
  /// 𝟙 · x_index.
  static SymPoly variable(std::size_t arity, std::size_t index);
  static SymPoly monomial(const SymMonomial& m);

  std::size_t arity() const noexcept { return arity_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// True when the polynomial has no monomial of positive degree.
  bool is_constant() const;
  /// The value of a constant polynomial (bottom for 𝟘).
  /// Precondition: is_constant().
  QMax constant_value() const;

  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  std::vector<SymMonomial> monomials() const;

  /// Adds u·x^α, merging by max with any monomial already stored at α.
  void add_monomial(const Exponents& exponents, const QMax& coef);

  /// Textual form using `names` for the indeterminates, e.g. `2 a^2 + a b`.
  std::string to_string(std::span<const std::string> names) const;

  friend bool operator==(const SymPoly&, const SymPoly&) = default;
  friend std::strong_ordering operator<=>(const SymPoly& a, const SymPoly& b);

private:
  std::size_t arity_;
  std::map<Exponents, Rational> terms_;
};

SymPoly poly_add(const SymPoly& p, const SymPoly& q);
SymPoly poly_mul(const SymPoly& p, const SymPoly& q);
SymPoly poly_pow(const SymPoly& p, std::uint64_t k);
QMax evaluate(const SymPoly& p, std::span<const QMax> point);

std::string monomial_to_string(const SymMonomial& m, std::span<const std::string> names);

}  // namespace tropreal
