// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tropreal {

/// Rational numbers, always kept canonical (lowest terms, positive
/// denominator).
using Rational = mpq_class;

/// An element of the max-plus semiring Q ∪ {-inf} with ⊕ = max and ⊗ = +.
///
/// Bottom (-inf, the semiring zero) is a separate tag and never a sentinel
/// rational. The unit is the rational 0.
class QMax {
public:
  /// The unit 𝟙 = 0.
  QMax() : value_(Rational(0)) {}
  QMax(long v) : value_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  explicit QMax(Rational v);

  static QMax bottom() { return QMax(std::nullopt); }
  static QMax one() { return QMax(); }

  bool is_bottom() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }

  /// Precondition: is_finite().
  const Rational& value() const { return *value_; }

  friend bool operator==(const QMax& a, const QMax& b);
  friend std::strong_ordering operator<=>(const QMax& a, const QMax& b);

  /// `-inf`, an integer, or `p/q`.
  std::string to_string() const;

  /// Accepts the same forms as to_string() produces; also `-p/q` and
  /// non-reduced fractions. Throws ParseError.
  static QMax parse(std::string_view text);

private:
  explicit QMax(std::nullopt_t) : value_(std::nullopt) {}

  std::optional<Rational> value_;
};

QMax oplus(const QMax& a, const QMax& b);
QMax otimes(const QMax& a, const QMax& b);
bool leq(const QMax& a, const QMax& b);

/// k-fold ⊗ power; power(x, 0) is 𝟙 for every x, including bottom.
QMax power(const QMax& a, std::uint64_t k);

/// Parses a rational literal `-?p(/q)?`. Throws ParseError.
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& r);

}  // namespace tropreal
