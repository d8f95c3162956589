// SPDX-License-Identifier: Apache-2.0
#include "tropreal/qmax.hpp"

#include <cctype>

#include "tropreal/errors.hpp"

namespace tropreal {

QMax::QMax(Rational v) : value_(std::move(v)) { value_->canonicalize(); }

bool operator==(const QMax& a, const QMax& b) {
  if (a.is_bottom() || b.is_bottom()) return a.is_bottom() == b.is_bottom();
  return a.value() == b.value();
}

std::strong_ordering operator<=>(const QMax& a, const QMax& b) {
  if (a.is_bottom()) {
    return b.is_bottom() ? std::strong_ordering::equal : std::strong_ordering::less;
  }
  if (b.is_bottom()) return std::strong_ordering::greater;
  const int c = cmp(a.value(), b.value());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string rational_to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string QMax::to_string() const {
  return is_bottom() ? "-inf" : rational_to_string(value());
}

Rational parse_rational(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && text[i] == '-') {
    negative = true;
    ++i;
  }
  auto digits = [&](std::string& out) {
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      out.push_back(text[i]);
      ++i;
    }
    if (i == start) throw ParseError("expected digits in rational literal", i);
  };
  std::string num, den = "1";
  digits(num);
  if (i < text.size() && text[i] == '/') {
    ++i;
    den.clear();
    digits(den);
  }
  if (i != text.size()) throw ParseError("trailing characters in rational literal", i);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw ParseError("zero denominator", i);
  Rational r(negative ? mpz_class(-n) : n, d);
  r.canonicalize();
  return r;
}

QMax QMax::parse(std::string_view text) {
  if (text == "-inf") return bottom();
  return QMax(parse_rational(text));
}

QMax oplus(const QMax& a, const QMax& b) { return a < b ? b : a; }

QMax otimes(const QMax& a, const QMax& b) {
  if (a.is_bottom() || b.is_bottom()) return QMax::bottom();
  return QMax(Rational(a.value() + b.value()));
}

bool leq(const QMax& a, const QMax& b) { return a <= b; }

QMax power(const QMax& a, std::uint64_t k) {
  if (k == 0) return QMax::one();
  if (a.is_bottom()) return QMax::bottom();
  return QMax(Rational(a.value() * mpz_class(std::to_string(k))));
}

}  // namespace tropreal
