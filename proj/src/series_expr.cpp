// SPDX-License-Identifier: Apache-2.0
#include "tropreal/series_expr.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "tropreal/errors.hpp"

namespace tropreal {

struct RatExpr::Node {
  Kind kind;
  std::size_t arity;
  Coef coef;
  std::uint64_t degree = 0;
  std::optional<RatExpr> left;
  std::optional<RatExpr> right;
};

namespace {

void require_same_arity(const RatExpr& a, const RatExpr& b) {
  if (a.arity() != b.arity()) {
    throw ArityMismatch("cannot combine expressions over " + std::to_string(a.arity()) +
                        " and " + std::to_string(b.arity()) + " indeterminates");
  }
}

}  // namespace

RatExpr RatExpr::monomial(Coef coef, std::uint64_t degree) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Monomial;
  n->arity = coef.arity();
  n->coef = std::move(coef);
  n->degree = degree;
  return RatExpr(std::move(n));
}

RatExpr RatExpr::sum(const RatExpr& left, const RatExpr& right) {
  require_same_arity(left, right);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->arity = left.arity();
  n->left = left;
  n->right = right;
  return RatExpr(std::move(n));
}

RatExpr RatExpr::product(const RatExpr& left, const RatExpr& right) {
  require_same_arity(left, right);
  if (left.kind() == Kind::Monomial && right.kind() == Kind::Monomial) {
    return monomial(poly_mul(left.coef(), right.coef()), left.degree() + right.degree());
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->arity = left.arity();
  n->left = left;
  n->right = right;
  return RatExpr(std::move(n));
}

RatExpr RatExpr::star(const RatExpr& child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Star;
  n->arity = child.arity();
  n->left = child;
  return RatExpr(std::move(n));
}

RatExpr::Kind RatExpr::kind() const noexcept { return node_->kind; }
std::size_t RatExpr::arity() const noexcept { return node_->arity; }

const Coef& RatExpr::coef() const {
  if (kind() != Kind::Monomial) throw InvalidArgument("coef() on a non-monomial node");
  return node_->coef;
}

std::uint64_t RatExpr::degree() const {
  if (kind() != Kind::Monomial) throw InvalidArgument("degree() on a non-monomial node");
  return node_->degree;
}

const RatExpr& RatExpr::left() const {
  if (kind() != Kind::Sum && kind() != Kind::Product) throw InvalidArgument("left() on a leaf");
  return *node_->left;
}

const RatExpr& RatExpr::right() const {
  if (kind() != Kind::Sum && kind() != Kind::Product) throw InvalidArgument("right() on a leaf");
  return *node_->right;
}

const RatExpr& RatExpr::child() const {
  if (kind() != Kind::Star) throw InvalidArgument("child() on a non-star node");
  return *node_->left;
}

bool operator==(const RatExpr& a, const RatExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.arity() != b.arity()) return false;
  switch (a.kind()) {
    case RatExpr::Kind::Monomial:
      return a.degree() == b.degree() && a.coef() == b.coef();
    case RatExpr::Kind::Sum:
    case RatExpr::Kind::Product:
      return a.left() == b.left() && a.right() == b.right();
    case RatExpr::Kind::Star:
      return a.child() == b.child();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
public:
  Parser(std::string_view text, std::span<const std::string> names)
      : text_(text), names_(names) {}

  RatExpr parse() {
    RatExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == '-' || std::isalpha(static_cast<unsigned char>(c)) ||
           std::isdigit(static_cast<unsigned char>(c));
  }

  RatExpr expr() {
    RatExpr e = term();
    while (peek('+')) {
      ++pos_;
      e = RatExpr::sum(e, term());
    }
    return e;
  }

  RatExpr term() {
    if (!starts_factor()) fail("expected a factor");
    RatExpr e = factor();
    while (starts_factor()) e = RatExpr::product(e, factor());
    return e;
  }

  std::uint64_t uint() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (UINT64_MAX - d) / 10) fail("integer too large");
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ == start) fail("expected an unsigned integer");
    return v;
  }

  RatExpr factor() {
    RatExpr e = atom();
    if (peek('^')) {
      ++pos_;
      const std::uint64_t k = uint();
      if (e.kind() == RatExpr::Kind::Monomial) {
        e = RatExpr::monomial(poly_pow(e.coef(), k), e.degree() * k);
      } else if (k == 0) {
        e = RatExpr::monomial(SymPoly::one(names_.size()), 0);
      } else {
        RatExpr base = e;
        for (std::uint64_t i = 1; i < k; ++i) e = RatExpr::product(e, base);
      }
    }
    while (peek('*')) {
      ++pos_;
      e = RatExpr::star(e);
    }
    return e;
  }

  RatExpr atom() {
    skip_ws();
    const std::size_t n = names_.size();
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RatExpr e = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return e;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      if (c == '-') {
        ++pos_;
        if (text_.substr(pos_, 3) == "inf" &&
            (pos_ + 3 >= text_.size() ||
             !std::isalnum(static_cast<unsigned char>(text_[pos_ + 3])))) {
          pos_ += 3;
          return RatExpr::monomial(SymPoly::zero(n), 0);
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          fail("expected digits or 'inf' after '-'");
        }
      }
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          fail("expected denominator");
        }
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
      Rational r;
      try {
        r = parse_rational(text_.substr(start, pos_ - start));
      } catch (const ParseError& err) {
        throw ParseError("invalid rational literal", start);
      }
      return RatExpr::monomial(SymPoly::constant(n, QMax(r)), 0);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view id = text_.substr(start, pos_ - start);
      if (id == "X") return RatExpr::monomial(SymPoly::one(n), 1);
      for (std::size_t i = 0; i < n; ++i) {
        if (names_[i] == id) return RatExpr::monomial(SymPoly::variable(n, i), 0);
      }
      throw ParseError("unknown identifier '" + std::string(id) + "'", start);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printing

std::string coef_token(const Coef& c, std::span<const std::string> names) {
  if (c.size() <= 1) return c.to_string(names);
  return "(" + c.to_string(names) + ")";
}

std::string print_monomial(const RatExpr& e, std::span<const std::string> names) {
  const Coef& c = e.coef();
  const std::uint64_t d = e.degree();
  if (d == 0) return coef_token(c, names);
  std::string x = d == 1 ? "X" : "X^" + std::to_string(d);
  if (c.size() == 1 && c.is_constant() && c.constant_value() == QMax::one()) return x;
  return coef_token(c, names) + " " + x;
}

bool single_token(const std::string& s) { return s.find(' ') == std::string::npos; }

std::string print(const RatExpr& e, std::span<const std::string> names) {
  switch (e.kind()) {
    case RatExpr::Kind::Monomial:
      return print_monomial(e, names);
    case RatExpr::Kind::Sum: {
      std::string r = print(e.right(), names);
      if (e.right().kind() == RatExpr::Kind::Sum) r = "(" + r + ")";
      return print(e.left(), names) + " + " + r;
    }
    case RatExpr::Kind::Product: {
      std::string l = print(e.left(), names);
      if (e.left().kind() == RatExpr::Kind::Sum) l = "(" + l + ")";
      std::string r = print(e.right(), names);
      const auto rk = e.right().kind();
      if (rk == RatExpr::Kind::Sum || rk == RatExpr::Kind::Product ||
          (rk == RatExpr::Kind::Monomial && !single_token(r))) {
        r = "(" + r + ")";
      }
      return l + " " + r;
    }
    case RatExpr::Kind::Star: {
      std::string s = print(e.child(), names);
      const auto ck = e.child().kind();
      const bool bare = ck == RatExpr::Kind::Star ||
                        (ck == RatExpr::Kind::Monomial && single_token(s) && s.front() != '(');
      return (bare ? s : "(" + s + ")") + "*";
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Coefficients

using CoefTable = std::vector<Coef>;

class CoefficientEvaluator {
public:
  CoefficientEvaluator(std::size_t arity, std::uint64_t max_k) : arity_(arity), max_k_(max_k) {}

  const CoefTable& table(const RatExpr& e) {
    if (auto it = memo_.find(e.identity()); it != memo_.end()) return it->second;
    CoefTable t(max_k_ + 1, SymPoly::zero(arity_));
    switch (e.kind()) {
      case RatExpr::Kind::Monomial:
        if (e.degree() <= max_k_) t[e.degree()] = e.coef();
        break;
      case RatExpr::Kind::Sum: {
        const CoefTable& a = table(e.left());
        const CoefTable& b = table(e.right());
        for (std::uint64_t k = 0; k <= max_k_; ++k) t[k] = poly_add(a[k], b[k]);
        break;
      }
      case RatExpr::Kind::Product: {
        const CoefTable& a = table(e.left());
        const CoefTable& b = table(e.right());
        for (std::uint64_t i = 0; i <= max_k_; ++i) {
          if (a[i].is_zero()) continue;
          for (std::uint64_t j = 0; i + j <= max_k_; ++j) {
            if (b[j].is_zero()) continue;
            t[i + j] = poly_add(t[i + j], poly_mul(a[i], b[j]));
          }
        }
        break;
      }
      case RatExpr::Kind::Star: {
        const CoefTable& a = table(e.child());
        if (!a[0].is_zero()) {
          throw StarOfUnit("star applied to a series with non-zero constant coefficient");
        }
        // S* = 1 ⊕ S·S*
        t[0] = SymPoly::one(arity_);
        for (std::uint64_t n = 1; n <= max_k_; ++n) {
          for (std::uint64_t i = 1; i <= n; ++i) {
            if (a[i].is_zero() || t[n - i].is_zero()) continue;
            t[n] = poly_add(t[n], poly_mul(a[i], t[n - i]));
          }
        }
        break;
      }
    }
    keep_.push_back(e);
    return memo_.emplace(e.identity(), std::move(t)).first->second;
  }

private:
  std::size_t arity_;
  std::uint64_t max_k_;
  std::unordered_map<const void*, CoefTable> memo_;
  std::vector<RatExpr> keep_;
};

}  // namespace

RatExpr parse_expr(std::string_view text, std::span<const std::string> indeterminates) {
  return Parser(text, indeterminates).parse();
}

std::string to_string(const RatExpr& e, std::span<const std::string> indeterminates) {
  return print(e, indeterminates);
}

std::vector<Coef> coefficients(const RatExpr& e, std::uint64_t max_k) {
  CoefficientEvaluator ev(e.arity(), max_k);
  return ev.table(e);
}

Coef coefficient(const RatExpr& e, std::uint64_t k) { return coefficients(e, k)[k]; }

std::vector<QMax> concrete_coefficients(const RatExpr& e, std::uint64_t max_k) {
  if (!e.is_concrete()) throw ArityMismatch("concrete_coefficients on a symbolic expression");
  std::vector<QMax> out;
  out.reserve(max_k + 1);
  for (const auto& c : coefficients(e, max_k)) out.push_back(c.constant_value());
  return out;
}

void check_star_admissible(const RatExpr& e) {
  switch (e.kind()) {
    case RatExpr::Kind::Monomial:
      return;
    case RatExpr::Kind::Sum:
    case RatExpr::Kind::Product:
      check_star_admissible(e.left());
      check_star_admissible(e.right());
      return;
    case RatExpr::Kind::Star:
      check_star_admissible(e.child());
      if (!coefficient(e.child(), 0).is_zero()) {
        throw StarOfUnit("star applied to a series with non-zero constant coefficient");
      }
      return;
  }
}

namespace {

RatExpr evaluate_node(const RatExpr& e, std::span<const QMax> point,
                      std::unordered_map<const void*, RatExpr>& memo) {
  if (auto it = memo.find(e.identity()); it != memo.end()) return it->second;
  RatExpr r = [&] {
    switch (e.kind()) {
      case RatExpr::Kind::Monomial:
        return RatExpr::monomial(SymPoly::constant(0, evaluate(e.coef(), point)), e.degree());
      case RatExpr::Kind::Sum:
        return RatExpr::sum(evaluate_node(e.left(), point, memo),
                            evaluate_node(e.right(), point, memo));
      case RatExpr::Kind::Product:
        return RatExpr::product(evaluate_node(e.left(), point, memo),
                                evaluate_node(e.right(), point, memo));
      case RatExpr::Kind::Star:
        break;
    }
    return RatExpr::star(evaluate_node(e.child(), point, memo));
  }();
  memo.emplace(e.identity(), r);
  return r;
}

}  // namespace

RatExpr evaluate_at(const RatExpr& e, std::span<const QMax> point) {
  if (point.size() != e.arity()) {
    throw ArityMismatch("point has " + std::to_string(point.size()) +
                        " coordinates, expression has " + std::to_string(e.arity()) +
                        " indeterminates");
  }
  std::unordered_map<const void*, RatExpr> memo;
  return evaluate_node(e, point, memo);
}

// ---------------------------------------------------------------------------
// SeriesStream

struct SeriesStream::State {
  std::size_t arity;
  std::optional<RatExpr> expr;
  Generator generator;
  std::mutex mutex;
  std::vector<Coef> cache;
};

SeriesStream::SeriesStream(RatExpr e) : state_(std::make_shared<State>()) {
  state_->arity = e.arity();
  state_->expr = std::move(e);
}

SeriesStream::SeriesStream(std::size_t arity, Generator generator)
    : state_(std::make_shared<State>()) {
  state_->arity = arity;
  state_->generator = std::move(generator);
}

std::size_t SeriesStream::arity() const noexcept { return state_->arity; }

Coef SeriesStream::coefficient(std::uint64_t k) const {
  std::lock_guard lock(state_->mutex);
  auto& cache = state_->cache;
  if (k < cache.size()) return cache[k];
  if (state_->expr) {
    const std::uint64_t target = std::max<std::uint64_t>(k, 2 * cache.size() + 15);
    cache = coefficients(*state_->expr, target);
  } else {
    while (cache.size() <= k) cache.push_back(state_->generator(cache.size()));
  }
  return cache[k];
}

QMax SeriesStream::value(std::uint64_t k) const {
  if (arity() != 0) throw ArityMismatch("value() on a symbolic stream");
  return coefficient(k).constant_value();
}

}  // namespace tropreal
