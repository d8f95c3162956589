// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tropreal/qmax.hpp"

namespace tropreal {

/// a · x ≥ b, or a · x > b when `strict`.
struct LinearRow {
  std::vector<Rational> a;
  Rational b;
  bool strict = false;
};

/// Exact Fourier–Motzkin elimination over Q^n.
///
/// Variables are eliminated in `order` when one is given (it must be a
/// permutation of 0..n-1), otherwise greedily by the smallest number of
/// generated rows. Equalities (pairs of opposite rows) are used for
/// substitution first.
///
/// On success returns a point satisfying every row. Each coordinate is the
/// midpoint of its feasible interval at back-substitution time, the finite
/// endpoint when the interval is one-sided (moved by 1 inside for a strict
/// bound), or 0 when unconstrained.
std::optional<std::vector<Rational>> fm_solve(std::size_t n, std::vector<LinearRow> rows,
                                              std::span<const std::size_t> order = {});

/// The same elimination carried out in GMP arithmetic throughout. fm_solve
/// runs it in checked 64-bit integers first and falls back to this on
/// overflow.
std::optional<std::vector<Rational>> fm_solve_rational(std::size_t n, std::vector<LinearRow> rows,
                                                       std::span<const std::size_t> order = {});

bool fm_feasible(std::size_t n, std::vector<LinearRow> rows,
                 std::span<const std::size_t> order = {});

}  // namespace tropreal
