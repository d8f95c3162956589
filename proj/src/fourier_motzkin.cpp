// SPDX-License-Identifier: Apache-2.0
#include "tropreal/fourier_motzkin.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numeric>
#include <map>

#include "tropreal/errors.hpp"

namespace tropreal {

namespace {

struct Bound {
  Rational b;
  bool strict;
};

/// Indices of the rows of the current phase a row was combined from.
using Origin = std::vector<std::uint32_t>;

struct Row {
  LinearRow row;
  Origin origin;
};

Origin merged(const Origin& a, const Origin& b) {
  Origin out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// True when `sub` ⊆ `super`.
bool covers(const Origin& super, const Origin& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

/// x ≥ bound `a` implies x ≥ bound `b`.
bool at_least(const Bound& a, const Bound& b) {
  return a.b > b.b || (a.b == b.b && (a.strict || !b.strict));
}

/// Starts a new elimination phase: every row is its own origin.
void restart(std::vector<Row>& rows) {
  for (std::uint32_t i = 0; i < rows.size(); ++i) rows[i].origin = {i};
}

/// Scales each row so its first nonzero coefficient is ±1 and drops a row
/// when another row of the same direction is at least as strong and was
/// combined from a subset of its origin. Returns false on a contradictory
/// constant row.
bool normalize(std::size_t n, std::vector<Row>& tracked) {
  std::map<std::vector<Rational>, std::vector<std::pair<Bound, Origin>>> best;
  for (auto& [row, origin] : tracked) {
    std::size_t lead = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(row.a[i]) != 0) {
        lead = i;
        break;
      }
    }
    if (lead == n) {
      if (row.strict ? sgn(row.b) >= 0 : sgn(row.b) > 0) return false;
      continue;
    }
    const Rational scale = abs(row.a[lead]);
    if (scale != 1) {
      for (std::size_t i = lead; i < n; ++i) row.a[i] /= scale;
      row.b /= scale;
    }
    Bound bound{row.b, row.strict};
    auto& same = best[std::move(row.a)];
    bool dominated = false;
    for (auto it = same.begin(); it != same.end();) {
      if (at_least(it->first, bound) && covers(origin, it->second)) {
        dominated = true;
        break;
      }
      if (at_least(bound, it->first) && covers(it->second, origin)) {
        it = same.erase(it);
      } else {
        ++it;
      }
    }
    if (!dominated) same.emplace_back(bound, std::move(origin));
  }
  tracked.clear();
  for (auto& [a, entries] : best) {
    for (auto& [bound, origin] : entries) tracked.push_back({{a, bound.b, bound.strict}, std::move(origin)});
  }
  return true;
}

/// Position of a row paired with its exact opposite, forming an equality.
std::optional<std::size_t> find_equality(const std::vector<Row>& rows,
                                         std::optional<std::size_t> var) {
  std::map<std::vector<Rational>, std::vector<std::size_t>> index;
  for (std::size_t r = 0; r < rows.size(); ++r) index[rows[r].row.a].push_back(r);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r].row;
    if (row.strict) continue;
    if (var && sgn(row.a[*var]) == 0) continue;
    std::vector<Rational> neg = row.a;
    for (auto& x : neg) x = -x;
    auto it = index.find(neg);
    if (it == index.end()) continue;
    for (auto o : it->second) {
      const auto& other = rows[o].row;
      if (!other.strict && other.b == -row.b) return r;
    }
  }
  return std::nullopt;
}

/// History entry for back-substitution.
struct Step {
  std::size_t var;
  bool substitution;
  std::vector<LinearRow> rows;  // the defining equality, or every row touching var
};

LinearRow substitute(const LinearRow& row, const LinearRow& eq, std::size_t v) {
  // eq: a · x = b with a_v ≠ 0, so x_v = (b − Σ_{i≠v} a_i x_i) / a_v.
  const Rational f = row.a[v] / eq.a[v];
  LinearRow out = row;
  for (std::size_t i = 0; i < row.a.size(); ++i) out.a[i] -= f * eq.a[i];
  out.a[v] = 0;
  out.b -= f * eq.b;
  return out;
}

std::size_t pick_variable(std::size_t n, const std::vector<Row>& rows,
                          const std::vector<bool>& done) {
  std::size_t best = n;
  std::size_t best_cost = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (done[v]) continue;
    std::size_t pos = 0, neg = 0;
    for (const auto& [row, origin] : rows) {
      const int s = sgn(row.a[v]);
      pos += s > 0;
      neg += s < 0;
    }
    const std::size_t cost = pos * neg;
    if (best == n || cost < best_cost) {
      best = v;
      best_cost = cost;
    }
  }
  return best;
}

Rational residual(const LinearRow& row, const std::vector<Rational>& x, std::size_t v) {
  Rational r = row.b;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i != v && sgn(row.a[i]) != 0) r -= row.a[i] * x[i];
  }
  return r;
}

Rational choose_value(const Step& step, const std::vector<Rational>& x) {
  const std::size_t v = step.var;
  if (step.substitution) return residual(step.rows.front(), x, v) / step.rows.front().a[v];
  std::optional<Bound> lo, hi;
  for (const auto& row : step.rows) {
    const Rational t = residual(row, x, v) / row.a[v];
    if (sgn(row.a[v]) > 0) {
      if (!lo || t > lo->b || (t == lo->b && row.strict)) lo = Bound{t, row.strict};
    } else {
      if (!hi || t < hi->b || (t == hi->b && row.strict)) hi = Bound{t, row.strict};
    }
  }
  if (lo && hi) return lo->b == hi->b ? lo->b : Rational((lo->b + hi->b) / 2);
  if (lo) return lo->strict ? Rational(lo->b + 1) : lo->b;
  if (hi) return hi->strict ? Rational(hi->b - 1) : hi->b;
  return 0;
}

// int64 elimination with every operation checked; a row is kept with
// gcd(a, b) = 1, which fixes it up to the direction a / gcd(a).
namespace fast {

using Int = std::int64_t;
struct Overflow {};

Int mul(Int x, Int y) {
  Int r;
  if (__builtin_mul_overflow(x, y, &r)) throw Overflow{};
  return r;
}

Int add(Int x, Int y) {
  Int r;
  if (__builtin_add_overflow(x, y, &r)) throw Overflow{};
  return r;
}

Int magnitude(Int x) {
  if (x == std::numeric_limits<Int>::min()) throw Overflow{};
  return x < 0 ? -x : x;
}

struct IRow {
  std::vector<Int> a;
  Int b = 0;
  bool strict = false;
  Origin origin;
  Int scale = 1;  // gcd of a, set by normalize
};

Int to_int(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Overflow{};
  return z.get_si();
}

IRow from_row(const LinearRow& row) {
  mpz_class l = row.b.get_den();
  for (const auto& x : row.a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IRow out;
  out.a.reserve(row.a.size());
  for (const auto& x : row.a) out.a.push_back(to_int(mpz_class(x.get_num() * (l / x.get_den()))));
  out.b = to_int(mpz_class(row.b.get_num() * (l / row.b.get_den())));
  out.strict = row.strict;
  return out;
}

LinearRow to_row(const IRow& row) {
  LinearRow out;
  for (auto x : row.a) out.a.emplace_back(static_cast<long>(x));
  out.b = Rational(static_cast<long>(row.b));
  out.strict = row.strict;
  return out;
}

/// b1/s1 compared with b2/s2 for positive s1, s2.
int compare_bound(Int b1, Int s1, Int b2, Int s2) {
  const __int128 l = static_cast<__int128>(b1) * s2;
  const __int128 r = static_cast<__int128>(b2) * s1;
  return l < r ? -1 : (l > r ? 1 : 0);
}

/// Row `a` implies row `b` of the same direction.
bool at_least(const IRow& a, const IRow& b) {
  const int c = compare_bound(a.b, a.scale, b.b, b.scale);
  return c > 0 || (c == 0 && (a.strict || !b.strict));
}

bool normalize(std::vector<IRow>& rows) {
  std::map<std::vector<Int>, std::vector<std::size_t>> best;
  std::vector<IRow> kept;
  std::vector<bool> dropped;
  for (auto& row : rows) {
    Int g = 0;
    for (auto x : row.a) g = std::gcd(g, magnitude(x));
    if (g == 0) {
      if (row.strict ? row.b >= 0 : row.b > 0) return false;
      continue;
    }
    const Int h = std::gcd(g, magnitude(row.b));
    if (h > 1) {
      for (auto& x : row.a) x /= h;
      row.b /= h;
    }
    row.scale = g / h;
    std::vector<Int> key = row.a;
    if (row.scale > 1) {
      for (auto& x : key) x /= row.scale;
    }
    auto& same = best[std::move(key)];
    bool dominated = false;
    for (auto it = same.begin(); it != same.end();) {
      const IRow& cur = kept[*it];
      if (at_least(cur, row) && covers(row.origin, cur.origin)) {
        dominated = true;
        break;
      }
      if (at_least(row, cur) && covers(cur.origin, row.origin)) {
        dropped[*it] = true;
        it = same.erase(it);
      } else {
        ++it;
      }
    }
    if (dominated) continue;
    same.push_back(kept.size());
    kept.push_back(std::move(row));
    dropped.push_back(false);
  }
  rows.clear();
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (!dropped[i]) rows.push_back(std::move(kept[i]));
  }
  return true;
}

std::optional<std::size_t> find_equality(const std::vector<IRow>& rows,
                                         std::optional<std::size_t> var) {
  std::map<std::vector<Int>, std::vector<std::size_t>> index;
  auto direction = [](const IRow& row, bool negate) {
    std::vector<Int> d = row.a;
    for (auto& x : d) x = (negate ? -x : x) / row.scale;
    return d;
  };
  for (std::size_t r = 0; r < rows.size(); ++r) index[direction(rows[r], false)].push_back(r);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.strict) continue;
    if (var && row.a[*var] == 0) continue;
    auto it = index.find(direction(row, true));
    if (it == index.end()) continue;
    for (auto o : it->second) {
      const auto& other = rows[o];
      if (!other.strict && compare_bound(other.b, other.scale, -row.b, row.scale) == 0) return r;
    }
  }
  return std::nullopt;
}

void restart(std::vector<IRow>& rows) {
  for (std::uint32_t i = 0; i < rows.size(); ++i) rows[i].origin = {i};
}

std::size_t pick_variable(std::size_t n, const std::vector<IRow>& rows,
                          const std::vector<bool>& done) {
  std::size_t best = n;
  std::size_t best_cost = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (done[v]) continue;
    std::size_t pos = 0, neg = 0;
    for (const auto& row : rows) {
      pos += row.a[v] > 0;
      neg += row.a[v] < 0;
    }
    const std::size_t cost = pos * neg;
    if (best == n || cost < best_cost) {
      best = v;
      best_cost = cost;
    }
  }
  return best;
}

/// x·row + y·other, componentwise.
IRow combine(Int x, const IRow& row, Int y, const IRow& other) {
  IRow out;
  out.a.resize(row.a.size());
  for (std::size_t i = 0; i < row.a.size(); ++i) out.a[i] = add(mul(x, row.a[i]), mul(y, other.a[i]));
  out.b = add(mul(x, row.b), mul(y, other.b));
  out.strict = row.strict || other.strict;
  return out;
}

struct IStep {
  std::size_t var;
  bool substitution;
  std::vector<IRow> rows;
};

std::optional<std::vector<Rational>> solve(std::size_t n, const std::vector<LinearRow>& input,
                                           std::span<const std::size_t> order) {
  std::vector<IRow> rows;
  rows.reserve(input.size());
  for (const auto& row : input) rows.push_back(from_row(row));
  restart(rows);
  if (!normalize(rows)) return std::nullopt;

  std::vector<IStep> history;
  std::vector<bool> done(n, false);
  std::size_t eliminated = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> forced;
    if (!order.empty()) forced = order[step];
    std::size_t v;
    if (auto eq = find_equality(rows, forced)) {
      const IRow def = rows[*eq];
      if (forced) {
        v = *forced;
      } else {
        v = 0;
        while (def.a[v] == 0) ++v;
      }
      const Int ev = def.a[v];
      std::vector<IRow> next;
      next.reserve(rows.size());
      for (auto& row : rows) {
        if (row.a[v] == 0) {
          next.push_back(std::move(row));
        } else {
          // |e_v| row - sign(e_v) row_v e: the row is scaled by a positive factor.
          next.push_back(combine(magnitude(ev), row, ev > 0 ? -row.a[v] : row.a[v], def));
          next.back().a[v] = 0;
        }
      }
      history.push_back({v, true, {def}});
      rows = std::move(next);
      restart(rows);
      eliminated = 0;
    } else {
      v = forced ? *forced : pick_variable(n, rows, done);
      std::vector<IRow> pos, neg, next;
      for (auto& row : rows) {
        if (row.a[v] > 0) {
          pos.push_back(std::move(row));
        } else if (row.a[v] < 0) {
          neg.push_back(std::move(row));
        } else {
          next.push_back(std::move(row));
        }
      }
      ++eliminated;
      for (const auto& p : pos) {
        for (const auto& q : neg) {
          Origin origin = merged(p.origin, q.origin);
          if (origin.size() > eliminated + 1) continue;
          IRow r = combine(-q.a[v], p, p.a[v], q);
          r.a[v] = 0;
          r.origin = std::move(origin);
          next.push_back(std::move(r));
        }
      }
      std::vector<IRow> touching = std::move(pos);
      for (auto& q : neg) touching.push_back(std::move(q));
      history.push_back({v, false, std::move(touching)});
      rows = std::move(next);
    }
    done[v] = true;
    if (!normalize(rows)) return std::nullopt;
  }

  std::vector<Rational> x(n, Rational(0));
  for (auto it = history.rbegin(); it != history.rend(); ++it) {
    Step step{it->var, it->substitution, {}};
    for (const auto& row : it->rows) step.rows.push_back(to_row(row));
    x[it->var] = choose_value(step, x);
  }
  return x;
}

}  // namespace fast

std::optional<std::vector<Rational>> solve_rational(std::size_t n, std::vector<LinearRow> rows,
                                                    std::span<const std::size_t> order) {
  std::vector<Row> tracked;
  for (auto& row : rows) tracked.push_back({std::move(row), {}});
  restart(tracked);
  if (!normalize(n, tracked)) return std::nullopt;

  std::vector<Step> history;
  std::vector<bool> done(n, false);
  std::size_t eliminated = 0;  // in the current phase
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> forced;
    if (!order.empty()) forced = order[step];
    std::size_t v;
    std::optional<std::size_t> eq = find_equality(tracked, forced);
    if (eq) {
      const LinearRow def = tracked[*eq].row;
      if (forced) {
        v = *forced;
      } else {
        v = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (sgn(def.a[i]) != 0) {
            v = i;
            break;
          }
        }
      }
      std::vector<Row> next;
      for (auto& [row, origin] : tracked) {
        next.push_back({sgn(row.a[v]) == 0 ? std::move(row) : substitute(row, def, v), {}});
      }
      history.push_back({v, true, {def}});
      tracked = std::move(next);
      restart(tracked);
      eliminated = 0;
    } else {
      v = forced ? *forced : pick_variable(n, tracked, done);
      std::vector<Row> pos, neg, next;
      for (auto& r : tracked) {
        const int s = sgn(r.row.a[v]);
        if (s > 0) {
          pos.push_back(std::move(r));
        } else if (s < 0) {
          neg.push_back(std::move(r));
        } else {
          next.push_back(std::move(r));
        }
      }
      ++eliminated;
      for (const auto& [p, po] : pos) {
        for (const auto& [q, qo] : neg) {
          Origin origin = merged(po, qo);
          // A row combined from more than eliminated + 1 rows is implied by the others.
          if (origin.size() > eliminated + 1) continue;
          const Rational fp = 1 / p.a[v];
          const Rational fq = -1 / q.a[v];
          LinearRow r;
          r.a.resize(n);
          for (std::size_t i = 0; i < n; ++i) r.a[i] = p.a[i] * fp + q.a[i] * fq;
          r.a[v] = 0;
          r.b = p.b * fp + q.b * fq;
          r.strict = p.strict || q.strict;
          next.push_back({std::move(r), std::move(origin)});
        }
      }
      std::vector<LinearRow> touching;
      for (auto& r : pos) touching.push_back(std::move(r.row));
      for (auto& r : neg) touching.push_back(std::move(r.row));
      history.push_back({v, false, std::move(touching)});
      tracked = std::move(next);
    }
    done[v] = true;
    if (!normalize(n, tracked)) return std::nullopt;
  }

  std::vector<Rational> x(n, Rational(0));
  for (auto it = history.rbegin(); it != history.rend(); ++it) x[it->var] = choose_value(*it, x);
  return x;
}

void check_rows(std::size_t n, std::vector<LinearRow>& rows) {
  for (auto& row : rows) {
    if (row.a.size() != n) throw ArityMismatch("linear row has the wrong number of coefficients");
    for (auto& x : row.a) x.canonicalize();
    row.b.canonicalize();
  }
}

}  // namespace

std::optional<std::vector<Rational>> fm_solve(std::size_t n, std::vector<LinearRow> rows,
                                              std::span<const std::size_t> order) {
  check_rows(n, rows);
  if (!order.empty()) {
    std::vector<std::size_t> sorted(order.begin(), order.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted.size() != n || sorted[i] != i) {
        throw InvalidArgument("elimination order must be a permutation of the variables");
      }
    }
  }
  try {
    return fast::solve(n, rows, order);
  } catch (const fast::Overflow&) {
    return solve_rational(n, std::move(rows), order);
  }
}

std::optional<std::vector<Rational>> fm_solve_rational(std::size_t n, std::vector<LinearRow> rows,
                                                       std::span<const std::size_t> order) {
  check_rows(n, rows);
  return solve_rational(n, std::move(rows), order);
}

bool fm_feasible(std::size_t n, std::vector<LinearRow> rows, std::span<const std::size_t> order) {
  return fm_solve(n, std::move(rows), order).has_value();
}

}  // namespace tropreal
