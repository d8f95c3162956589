// SPDX-License-Identifier: Apache-2.0
#include "tropreal/realization.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "tropreal/errors.hpp"

namespace tropreal {

namespace {

void check_dim(std::size_t dim, std::size_t cap) {
  if (dim == 0) throw InvalidArgument("realization dimension must be positive");
  if (dim > cap) {
    throw DimensionCap("dimension " + std::to_string(dim) + " exceeds the enumeration cap " +
                       std::to_string(cap) + " (raise it explicitly to go further)");
  }
}

std::size_t arity_of(std::size_t dim) { return 2 * dim + dim * dim; }
std::size_t c_index(std::size_t, std::size_t i) { return i - 1; }
std::size_t a_index(std::size_t dim, std::size_t i, std::size_t j) {
  return dim + (i - 1) * dim + (j - 1);
}
std::size_t b_index(std::size_t dim, std::size_t j) { return dim + dim * dim + j - 1; }

void extend_paths(std::size_t dim, std::vector<std::size_t>& states, std::vector<bool>& used,
                  std::vector<Path>& out) {
  Path p;
  p.states = states;
  p.weight = {QMax::one(), Exponents(arity_of(dim), 0)};
  p.weight.exponents[c_index(dim, states.front())] += 1;
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    p.weight.exponents[a_index(dim, states[k], states[k + 1])] += 1;
  }
  p.weight.exponents[b_index(dim, states.back())] += 1;
  p.length = states.size() - 1;
  out.push_back(std::move(p));
  for (std::size_t s = 1; s <= dim; ++s) {
    if (used[s]) continue;
    used[s] = true;
    states.push_back(s);
    extend_paths(dim, states, used, out);
    states.pop_back();
    used[s] = false;
  }
}

void extend_circuits(std::size_t dim, std::vector<std::size_t>& states, std::vector<bool>& used,
                     std::vector<Circuit>& out) {
  Circuit c;
  c.states = states;
  c.weight = {QMax::one(), Exponents(arity_of(dim), 0)};
  for (std::size_t k = 0; k < states.size(); ++k) {
    c.weight.exponents[a_index(dim, states[k], states[(k + 1) % states.size()])] += 1;
  }
  c.length = states.size();
  out.push_back(std::move(c));
  for (std::size_t s = states.front() + 1; s <= dim; ++s) {
    if (used[s]) continue;
    used[s] = true;
    states.push_back(s);
    extend_circuits(dim, states, used, out);
    states.pop_back();
    used[s] = false;
  }
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

RatExpr monomial_expr(const SymMonomial& m, std::uint64_t degree) {
  return RatExpr::monomial(SymPoly::monomial(m), degree);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Realization Realization::bottom(std::size_t dim) {
  return {dim, std::vector<QMax>(dim, QMax::bottom()),
          std::vector<std::vector<QMax>>(dim, std::vector<QMax>(dim, QMax::bottom())),
          std::vector<QMax>(dim, QMax::bottom())};
}

std::vector<QMax> Realization::flatten() const {
  std::vector<QMax> out = c;
  for (const auto& row : A) out.insert(out.end(), row.begin(), row.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Realization Realization::unflatten(std::size_t dim, std::span<const QMax> point) {
  if (point.size() != arity_of(dim)) {
    throw ArityMismatch("a dimension-" + std::to_string(dim) + " realization has " +
                        std::to_string(arity_of(dim)) + " entries, got " +
                        std::to_string(point.size()));
  }
  Realization r = bottom(dim);
  for (std::size_t i = 1; i <= dim; ++i) {
    r.c[i - 1] = point[c_index(dim, i)];
    r.b[i - 1] = point[b_index(dim, i)];
    for (std::size_t j = 1; j <= dim; ++j) r.A[i - 1][j - 1] = point[a_index(dim, i, j)];
  }
  return r;
}

QMax Realization::coefficient(std::uint64_t k) const {
  std::vector<QMax> v = c;
  for (std::uint64_t step = 0; step < k; ++step) {
    std::vector<QMax> next(dim, QMax::bottom());
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) next[j] = oplus(next[j], otimes(v[i], A[i][j]));
    }
    v = std::move(next);
  }
  QMax acc = QMax::bottom();
  for (std::size_t j = 0; j < dim; ++j) acc = oplus(acc, otimes(v[j], b[j]));
  return acc;
}

std::vector<std::string> realization_names(std::size_t dim) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= dim; ++i) names.push_back("c" + std::to_string(i));
  for (std::size_t i = 1; i <= dim; ++i) {
    for (std::size_t j = 1; j <= dim; ++j) {
      names.push_back("A" + std::to_string(i) + std::to_string(j));
    }
  }
  for (std::size_t j = 1; j <= dim; ++j) names.push_back("b" + std::to_string(j));
  return names;
}

std::vector<Path> enumerate_paths(std::size_t dim, std::size_t cap) {
  check_dim(dim, cap);
  std::vector<Path> out;
  std::vector<bool> used(dim + 1, false);
  for (std::size_t s = 1; s <= dim; ++s) {
    std::vector<std::size_t> states{s};
    used[s] = true;
    extend_paths(dim, states, used, out);
    used[s] = false;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Path& a, const Path& b) { return a.length < b.length; });
  return out;
}

std::vector<Circuit> enumerate_circuits(std::size_t dim, std::size_t cap) {
  check_dim(dim, cap);
  std::vector<Circuit> out;
  std::vector<bool> used(dim + 1, false);
  for (std::size_t s = 1; s <= dim; ++s) {
    std::vector<std::size_t> states{s};
    used[s] = true;
    extend_circuits(dim, states, used, out);
    used[s] = false;
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Circuit& a, const Circuit& b) { return a.length < b.length; });
  return out;
}

std::vector<std::vector<std::size_t>> accessible_subsets(const Path& path,
                                                         const std::vector<Circuit>& circuits) {
  if (circuits.size() >= 63) throw DimensionCap("too many circuits to enumerate subsets");
  std::size_t nodes = 1;
  for (auto s : path.states) nodes = std::max(nodes, s + 1);
  for (const auto& c : circuits) {
    for (auto s : c.states) nodes = std::max(nodes, s + 1);
  }
  std::vector<std::vector<std::size_t>> out;
  const std::uint64_t total = std::uint64_t{1} << circuits.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    UnionFind uf(nodes);
    for (auto s : path.states) uf.join(s, path.states.front());
    std::vector<std::size_t> chosen;
    for (std::size_t k = 0; k < circuits.size(); ++k) {
      if (!(mask >> k & 1)) continue;
      chosen.push_back(k);
      for (auto s : circuits[k].states) uf.join(s, circuits[k].states.front());
    }
    const std::size_t root = uf.find(path.states.front());
    const bool connected = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t k) {
      return uf.find(circuits[k].states.front()) == root;
    });
    if (connected) out.push_back(std::move(chosen));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

RatExpr universal_series(std::size_t dim, std::size_t cap) {
  check_dim(dim, cap);
  static std::mutex mutex;
  static std::map<std::size_t, RatExpr> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(dim); it != cache.end()) return it->second;
  }
  const std::size_t n = arity_of(dim);
  const auto paths = enumerate_paths(dim, cap);
  const auto circuits = enumerate_circuits(dim, cap);
  std::vector<RatExpr> plus;  // w(γ) (w(γ))*
  for (const auto& c : circuits) {
    const RatExpr w = monomial_expr(c.weight, c.length);
    plus.push_back(RatExpr::product(w, RatExpr::star(w)));
  }
  std::optional<RatExpr> total;
  for (const auto& p : paths) {
    std::optional<RatExpr> loops;
    for (const auto& subset : accessible_subsets(p, circuits)) {
      std::optional<RatExpr> term;
      for (auto k : subset) term = term ? RatExpr::product(*term, plus[k]) : plus[k];
      const RatExpr t = term ? *term : RatExpr::monomial(SymPoly::one(n), 0);
      loops = loops ? RatExpr::sum(*loops, t) : t;
    }
    const RatExpr path_term = RatExpr::product(monomial_expr(p.weight, p.length), *loops);
    total = total ? RatExpr::sum(*total, path_term) : path_term;
  }
  std::lock_guard lock(mutex);
  cache.emplace(dim, *total);
  return *total;
}

RatExpr recognized_series(const Realization& r, std::size_t cap) {
  const auto point = r.flatten();
  return evaluate_at(universal_series(r.dim, cap), point);
}

Template parse_template(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::vector<std::string>> names;
  std::string body;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!names) {
      names.emplace();
      std::istringstream words(t);
      for (std::string w; words >> w;) names->push_back(w);
    } else {
      if (!body.empty()) body += ' ';
      body += t;
    }
  }
  if (!names) throw ParseError("template has no indeterminate line", 0);
  if (body.empty()) throw ParseError("template has no expression", text.size());
  return {*names, parse_expr(body, *names)};
}

SetExpr realization_set_expr(const RatExpr& target, std::size_t dim,
                             const std::optional<Template>& tpl, std::size_t cap) {
  if (tpl) return stratified_set_expr(tpl->expr, target);
  return stratified_set_expr(universal_series(dim, cap), target);
}

SemiPolySet realization_set(const RatExpr& target, std::size_t dim,
                            const std::optional<Template>& tpl, std::size_t cap,
                            const SetOptions& options) {
  if (tpl) return equality_set(tpl->expr, target, options);
  return equality_set(universal_series(dim, cap), target, options);
}

std::optional<std::vector<QMax>> realization_witness(const RatExpr& target, std::size_t dim,
                                                     const std::optional<Template>& tpl,
                                                     std::size_t cap) {
  if (tpl) return equality_witness(tpl->expr, target);
  return equality_witness(universal_series(dim, cap), target);
}

bool verify(const Realization& r, const RatExpr& target, std::size_t cap) {
  return series_equal(recognized_series(r, cap), target);
}

std::optional<std::pair<std::size_t, Realization>> minimal_realization(const RatExpr& target,
                                                                       std::size_t max_dim,
                                                                       std::size_t cap) {
  check_dim(max_dim, cap);
  const CanonicalUGM g = canonicalize(target);
  if (series_equal(g, canonicalize(RatExpr::zero(0)))) {
    return std::make_pair(std::size_t{1}, Realization::bottom(1));
  }
  for (std::size_t dim = 1; dim <= max_dim; ++dim) {
    const auto w = realization_witness(target, dim, std::nullopt, cap);
    if (!w) continue;
    Realization r = Realization::unflatten(dim, *w);
    if (!verify(r, target, cap)) throw Error("witness failed verification (internal error)");
    return std::make_pair(dim, std::move(r));
  }
  return std::nullopt;
}

}  // namespace tropreal
