// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tropreal/qmax.hpp"
#include "tropreal/sympoly.hpp"

namespace tropreal {

/// Coefficients of rational expressions. A concrete coefficient is a
/// polynomial of arity 0 (𝟘 or a single constant); a symbolic coefficient is a
/// polynomial over the expression's indeterminates.
using Coef = SymPoly;

/// A rational expression in one letter X.
///
/// Nodes are immutable and shared. Every node of a tree has the same
/// arity (number of indeterminates); concrete expressions have arity 0.
/// `product` folds a product of two monomials into one monomial, so
/// `1 X` is the single node coef·X^1.
class RatExpr {
public:
  enum class Kind { Monomial, Sum, Product, Star };

  static RatExpr monomial(Coef coef, std::uint64_t degree);
  static RatExpr constant(const QMax& c) { return monomial(SymPoly::constant(0, c), 0); }
  static RatExpr zero(std::size_t arity) { return monomial(SymPoly::zero(arity), 0); }
  static RatExpr sum(const RatExpr& left, const RatExpr& right);
  static RatExpr product(const RatExpr& left, const RatExpr& right);
  static RatExpr star(const RatExpr& child);

  Kind kind() const noexcept;
  std::size_t arity() const noexcept;
  bool is_concrete() const noexcept { return arity() == 0; }

  /// Monomial nodes only.
  const Coef& coef() const;
  std::uint64_t degree() const;
  /// Sum and Product nodes.
  const RatExpr& left() const;
  const RatExpr& right() const;
  /// Star nodes.
  const RatExpr& child() const;

  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const RatExpr& a, const RatExpr& b);

private:
  struct Node;
  explicit RatExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the ASCII grammar
///
///     expr   := term ('+' term)*
///     term   := factor+                 (juxtaposition is ⊗)
///     factor := atom ('^' uint)? ('*')*
///     atom   := rational | '-inf' | 'X' | ident | '(' expr ')'
///
/// Identifiers must appear in `indeterminates`; the result has arity
/// indeterminates.size(). Throws ParseError (with byte position).
RatExpr parse_expr(std::string_view text, std::span<const std::string> indeterminates = {});

/// Inverse of parse_expr up to whitespace and redundant parentheses.
std::string to_string(const RatExpr& e, std::span<const std::string> indeterminates = {});

/// Coefficients ⟨S, X^0⟩ … ⟨S, X^max_k⟩. Throws StarOfUnit when a starred
/// subexpression has a constant coefficient other than 𝟘.
std::vector<Coef> coefficients(const RatExpr& e, std::uint64_t max_k);
Coef coefficient(const RatExpr& e, std::uint64_t k);

/// Same for concrete expressions, as scalars.
std::vector<QMax> concrete_coefficients(const RatExpr& e, std::uint64_t max_k);

/// Checks star admissibility of every starred subexpression. Throws StarOfUnit.
void check_star_admissible(const RatExpr& e);

/// Replaces every symbolic coefficient by its value at `point`; the result is
/// concrete and has the same shape. Throws ArityMismatch.
RatExpr evaluate_at(const RatExpr& e, std::span<const QMax> point);

/// A deterministic coefficient generator k ↦ ⟨S, X^k⟩ with an internal,
/// synchronized memo.
class SeriesStream {
public:
  using Generator = std::function<Coef(std::uint64_t)>;

  explicit SeriesStream(RatExpr e);
  SeriesStream(std::size_t arity, Generator generator);

  std::size_t arity() const noexcept;
  Coef coefficient(std::uint64_t k) const;
  /// Concrete streams only.
  QMax value(std::uint64_t k) const;

private:
  struct State;
  std::shared_ptr<State> state_;
};

}  // namespace tropreal
