// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tropreal/realization.hpp"
#include "tropreal/semipoly.hpp"

namespace tropreal {

using Json = nlohmann::ordered_json;

/// Scalars are strings (`"-inf"`, `"3"`, `"-1/2"`); integers are also
/// accepted as JSON numbers on input.
Json scalar_to_json(const QMax& x);
QMax scalar_from_json(const Json& j);

/// {"coef": scalar, "exponents": {name: power, …}}.
Json monomial_to_json(const SymMonomial& m, std::span<const std::string> names);
SymMonomial monomial_from_json(const Json& j, std::span<const std::string> names);

/// {"variables": [names], "parts": [[{"lhs": m, "rhs": m}, …], …]}.
Json set_to_json(const SemiPolySet& s, std::span<const std::string> names);
/// Names come from the "variables" member.
SemiPolySet set_from_json(const Json& j);

/// {"dim": N, "c": [...], "A": [[...], ...], "b": [...]}.
Json realization_to_json(const Realization& r);
Realization realization_from_json(const Json& j);

/// Either an array of scalars in variable order or {"values": {name: scalar}}
/// naming every variable.
std::vector<QMax> point_from_json(const Json& j, std::span<const std::string> names);
Json point_to_json(std::span<const QMax> point, std::span<const std::string> names);

}  // namespace tropreal
