// SPDX-License-Identifier: Apache-2.0
#include "tropreal/set_expr.hpp"

#include <algorithm>
#include <set>

#include "tropreal/errors.hpp"

namespace tropreal {

struct SetExpr::Node {
  Kind kind;
  std::size_t arity;
  Polyhedron leaf;
  std::vector<SetExpr> children;
};

namespace {

void check_arity(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ArityMismatch("set arity mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

bool entails(const Polyhedron& current, const Polyhedron& leaf) {
  return std::all_of(leaf.constraints.begin(), leaf.constraints.end(), [&](const HalfSpace& h) {
    return std::binary_search(current.constraints.begin(), current.constraints.end(), h);
  });
}

// Constraints contributed per branch, counting only leaves met without
// further branching.
std::size_t leaf_mass(const SetExpr& e) {
  switch (e.kind()) {
    case SetExpr::Kind::Leaf:
      return e.polyhedron().constraints.size();
    case SetExpr::Kind::All: {
      std::size_t m = 0;
      for (const auto& c : e.children()) m += leaf_mass(c);
      return m;
    }
    case SetExpr::Kind::Any:
      return 0;
  }
  return 0;
}

double weight(const SetExpr& u) {
  std::size_t mass = 0;
  for (const auto& c : u.children()) mass += leaf_mass(c);
  return static_cast<double>(mass) / static_cast<double>(u.children().size() * u.children().size());
}

class Expander {
public:
  Expander(std::size_t arity, bool first_only, const std::vector<bool>* pattern = nullptr)
      : arity_(arity), first_only_(first_only), pattern_(pattern) {}

  std::vector<QMax> start() const {
    std::vector<QMax> point(arity_, QMax::bottom());
    if (pattern_) {
      for (std::size_t i = 0; i < arity_; ++i) {
        if (!(*pattern_)[i]) point[i] = QMax::one();
      }
    }
    return point;
  }

  bool done() const { return first_only_ && !parts_.empty(); }
  const std::vector<Polyhedron>& parts() const { return parts_; }
  /// A point of the first part, valid once a part exists.
  const std::vector<QMax>& point() const { return point_; }

  void run(std::vector<SetExpr> pending, Polyhedron current, std::vector<QMax> point) {
    if (done()) return;
    std::vector<SetExpr> unions;
    bool grew = false;
    while (!pending.empty()) {
      SetExpr e = std::move(pending.back());
      pending.pop_back();
      switch (e.kind()) {
        case SetExpr::Kind::Leaf:
          if (!entails(current, e.polyhedron())) {
            current = intersect_normalized(current, e.polyhedron());
            grew = true;
          }
          break;
        case SetExpr::Kind::All:
          for (const auto& c : e.children()) pending.push_back(c);
          break;
        case SetExpr::Kind::Any:
          if (e.children().empty()) return;
          if (e.children().size() == 1) {
            pending.push_back(e.children().front());
          } else {
            unions.push_back(std::move(e));
          }
          break;
      }
    }
    if (grew && !current.contains(point)) {
      auto w = pattern_ ? normalized_witness_in(current, *pattern_) : poly_witness(current);
      if (!w) return;
      point = std::move(*w);
    }

    // A union with a branch already implied by `current` adds nothing.
    std::erase_if(unions, [&](const SetExpr& u) {
      return std::any_of(u.children().begin(), u.children().end(), [&](const SetExpr& c) {
        return c.kind() == SetExpr::Kind::Leaf && entails(current, c.polyhedron());
      });
    });
    // A leaf branch that `current` implies is taken alone: the other
    // branches add no point.
    std::vector<SetExpr> forced;
    std::erase_if(unions, [&](const SetExpr& u) {
      for (const auto& c : u.children()) {
        if (c.kind() == SetExpr::Kind::Leaf && c.polyhedron().contains(point) &&
            implies(current, c.polyhedron())) {
          forced.push_back(c);
          return true;
        }
      }
      return false;
    });
    if (!forced.empty()) {
      forced.insert(forced.end(), unions.begin(), unions.end());
      run(std::move(forced), std::move(current), std::move(point));
      return;
    }
    if (unions.empty()) {
      if (seen_.insert(current.constraints).second) {
        parts_.push_back(std::move(current));
        if (parts_.size() == 1) point_ = point;
      }
      return;
    }
    auto pick = std::max_element(unions.begin(), unions.end(), [](const SetExpr& a, const SetExpr& b) {
      return weight(a) < weight(b);
    });
    const SetExpr chosen = *pick;
    unions.erase(pick);
    // Branches holding the current point need no emptiness test; try them first.
    std::vector<SetExpr> order;
    std::vector<SetExpr> rest;
    for (const auto& branch : chosen.children()) {
      (branch.contains(point) ? order : rest).push_back(branch);
    }
    order.insert(order.end(), rest.begin(), rest.end());
    for (const auto& branch : order) {
      if (done()) return;
      std::vector<SetExpr> next = unions;
      next.push_back(branch);
      run(std::move(next), current, point);
    }
  }

  bool is_empty(const Polyhedron& p) const {
    return !(pattern_ ? normalized_witness_in(p, *pattern_) : poly_witness(p));
  }

  bool implies(const Polyhedron& current, const Polyhedron& leaf) const {
    for (const auto& h : leaf.constraints) {
      if (std::binary_search(current.constraints.begin(), current.constraints.end(), h)) continue;
      const Polyhedron outside{arity_, {canonical(negate(h))}};
      if (!is_empty(intersect_normalized(current, outside))) return false;
    }
    return true;
  }

  SemiPolySet result(const SetOptions& options) {
    return pruned(SemiPolySet{arity_, std::move(parts_)}, options);
  }

private:
  std::size_t arity_;
  bool first_only_;
  const std::vector<bool>* pattern_;
  std::vector<Polyhedron> parts_;
  std::vector<QMax> point_;
  std::set<std::vector<HalfSpace>> seen_;
};

}  // namespace

SetExpr SetExpr::leaf(const Polyhedron& p) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::Leaf, p.arity, normalized(p), {}}));
}

SetExpr SetExpr::all(std::size_t arity, std::vector<SetExpr> children) {
  std::vector<SetExpr> kept;
  Polyhedron merged{arity, {}};
  for (auto& c : children) {
    check_arity(arity, c.arity());
    if (c.is_empty_union()) return empty(arity);
    if (c.kind() == Kind::Leaf) {
      merged = intersect(merged, c.polyhedron());
    } else if (c.kind() == Kind::All) {
      for (const auto& g : c.children()) {
        if (g.kind() == Kind::Leaf) {
          merged = intersect(merged, g.polyhedron());
        } else {
          kept.push_back(g);
        }
      }
    } else {
      kept.push_back(std::move(c));
    }
  }
  if (merged.constraints.size() == 1 && trivially_false(merged.constraints.front())) {
    return empty(arity);
  }
  if (kept.empty()) return leaf(merged);
  if (!merged.constraints.empty()) kept.insert(kept.begin(), leaf(merged));
  if (kept.size() == 1) return kept.front();
  return SetExpr(std::make_shared<const Node>(Node{Kind::All, arity, {}, std::move(kept)}));
}

SetExpr SetExpr::any(std::size_t arity, std::vector<SetExpr> children) {
  std::vector<SetExpr> kept;
  for (auto& c : children) {
    check_arity(arity, c.arity());
    if (c.is_whole()) return whole(arity);
    if (c.is_empty_union()) continue;
    if (c.kind() == Kind::Leaf && c.polyhedron().constraints.size() == 1 &&
        trivially_false(c.polyhedron().constraints.front())) {
      continue;
    }
    if (c.kind() == Kind::Any) {
      kept.insert(kept.end(), c.children().begin(), c.children().end());
    } else {
      kept.push_back(std::move(c));
    }
  }
  if (kept.size() == 1) return kept.front();
  return SetExpr(std::make_shared<const Node>(Node{Kind::Any, arity, {}, std::move(kept)}));
}

SetExpr SetExpr::from_set(const SemiPolySet& s) {
  std::vector<SetExpr> parts;
  for (const auto& p : s.parts) parts.push_back(leaf(p));
  return any(s.arity, std::move(parts));
}

SetExpr::Kind SetExpr::kind() const noexcept { return node_->kind; }
std::size_t SetExpr::arity() const noexcept { return node_->arity; }

const Polyhedron& SetExpr::polyhedron() const {
  if (node_->kind != Kind::Leaf) throw InvalidArgument("not a leaf set");
  return node_->leaf;
}

const std::vector<SetExpr>& SetExpr::children() const {
  if (node_->kind == Kind::Leaf) throw InvalidArgument("a leaf set has no children");
  return node_->children;
}

bool SetExpr::is_whole() const {
  return node_->kind == Kind::Leaf && node_->leaf.constraints.empty();
}

bool SetExpr::is_empty_union() const {
  return node_->kind == Kind::Any && node_->children.empty();
}

bool SetExpr::contains(std::span<const QMax> point) const {
  check_arity(arity(), point.size());
  switch (node_->kind) {
    case Kind::Leaf:
      return node_->leaf.contains(point);
    case Kind::All:
      return std::all_of(node_->children.begin(), node_->children.end(),
                         [&](const SetExpr& c) { return c.contains(point); });
    case Kind::Any:
      return std::any_of(node_->children.begin(), node_->children.end(),
                         [&](const SetExpr& c) { return c.contains(point); });
  }
  return false;
}

SemiPolySet SetExpr::expand(const SetOptions& options) const {
  Expander ex(arity(), false);
  ex.run({*this}, Polyhedron{arity(), {}}, ex.start());
  return ex.result(options);
}

std::optional<std::vector<QMax>> SetExpr::witness() const {
  Expander ex(arity(), true);
  ex.run({*this}, Polyhedron{arity(), {}}, ex.start());
  if (ex.parts().empty()) return std::nullopt;
  return ex.point();
}

SemiPolySet SetExpr::expand_in(const std::vector<bool>& pattern, const SetOptions& options) const {
  check_arity(arity(), pattern.size());
  Expander ex(arity(), false, &pattern);
  ex.run({*this}, Polyhedron{arity(), {}}, ex.start());
  return ex.result(options);
}

std::optional<std::vector<QMax>> SetExpr::witness_in(const std::vector<bool>& pattern) const {
  check_arity(arity(), pattern.size());
  Expander ex(arity(), true, &pattern);
  ex.run({*this}, Polyhedron{arity(), {}}, ex.start());
  if (ex.parts().empty()) return std::nullopt;
  return ex.point();
}

SetExpr intersect(const SetExpr& a, const SetExpr& b) {
  check_arity(a.arity(), b.arity());
  return SetExpr::all(a.arity(), {a, b});
}

SetExpr unite(const SetExpr& a, const SetExpr& b) {
  check_arity(a.arity(), b.arity());
  return SetExpr::any(a.arity(), {a, b});
}

// ---------------------------------------------------------------------------
// Constructions

SetExpr expr_monomial_le(const SymMonomial& m, const SymPoly& q) {
  check_arity(m.arity(), q.arity());
  const std::size_t n = q.arity();
  if (m.is_zero()) return SetExpr::whole(n);
  if (q.is_zero()) {
    return SetExpr::leaf({n, {half_space({QMax::bottom(), Exponents(n, 0)}, m)}});
  }
  std::vector<SetExpr> branches;
  for (const auto& ql : q.monomials()) branches.push_back(SetExpr::leaf({n, {half_space(ql, m)}}));
  return SetExpr::any(n, std::move(branches));
}

SetExpr expr_monomial_eq(const SymMonomial& m, const SymMonomial& m2) {
  check_arity(m.arity(), m2.arity());
  return SetExpr::leaf({m.arity(), {half_space(m, m2), half_space(m2, m)}});
}

SetExpr expr_poly_le(const SymPoly& p, const SymPoly& q) {
  check_arity(p.arity(), q.arity());
  std::vector<SetExpr> factors;
  for (const auto& m : p.monomials()) factors.push_back(expr_monomial_le(m, q));
  return SetExpr::all(p.arity(), std::move(factors));
}

SetExpr expr_poly_is_zero(const SymPoly& p) {
  const std::size_t n = p.arity();
  std::vector<SetExpr> factors;
  for (const auto& m : p.monomials()) {
    std::vector<SetExpr> branches;
    for (std::size_t i = 0; i < n; ++i) {
      if (m.exponents[i] > 0) branches.push_back(SetExpr::leaf({n, {is_bottom(n, i)}}));
    }
    factors.push_back(SetExpr::any(n, std::move(branches)));
  }
  return SetExpr::all(n, std::move(factors));
}

SetExpr expr_poly_eq(const SymPoly& p, const SymPoly& q) {
  check_arity(p.arity(), q.arity());
  const std::size_t n = p.arity();
  if (p.is_zero()) return expr_poly_is_zero(q);
  if (q.is_zero()) return expr_poly_is_zero(p);
  const auto ps = p.monomials();
  const auto qs = q.monomials();
  std::vector<SetExpr> branches;
  if (ps.size() == 1 || qs.size() == 1) {
    // Every monomial is at most m, and one reaches it.
    const auto& many = ps.size() == 1 ? qs : ps;
    const SymMonomial& single = ps.size() == 1 ? ps.front() : qs.front();
    Polyhedron below{n, {}};
    for (const auto& m : many) {
      below.constraints.push_back(half_space(single, m));
      branches.push_back(SetExpr::leaf({n, {half_space(m, single)}}));
    }
    return intersect(SetExpr::leaf(below), SetExpr::any(n, std::move(branches)));
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < qs.size(); ++j) {
      Polyhedron part{n, {half_space(ps[i], qs[j]), half_space(qs[j], ps[i])}};
      for (std::size_t k = 0; k < ps.size(); ++k) {
        if (k != i) part.constraints.push_back(half_space(ps[i], ps[k]));
      }
      for (std::size_t l = 0; l < qs.size(); ++l) {
        if (l != j) part.constraints.push_back(half_space(qs[j], qs[l]));
      }
      branches.push_back(SetExpr::leaf(part));
    }
  }
  return SetExpr::any(n, std::move(branches));
}

}  // namespace tropreal
