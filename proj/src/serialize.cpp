// SPDX-License-Identifier: Apache-2.0
#include "tropreal/serialize.hpp"

#include <map>

#include "tropreal/errors.hpp"

namespace tropreal {

namespace {

std::string name_of(std::size_t i, std::span<const std::string> names) {
  return i < names.size() ? names[i] : "d" + std::to_string(i + 1);
}

std::map<std::string, std::size_t> index_of(std::span<const std::string> names) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < names.size(); ++i) idx.emplace(names[i], i);
  return idx;
}

std::vector<QMax> vector_from_json(const Json& j, std::size_t size, const char* what) {
  if (!j.is_array() || j.size() != size) {
    throw ParseError(std::string("expected ") + std::to_string(size) + " entries in " + what, 0);
  }
  std::vector<QMax> out;
  for (const auto& x : j) out.push_back(scalar_from_json(x));
  return out;
}

}  // namespace

Json scalar_to_json(const QMax& x) { return x.to_string(); }

QMax scalar_from_json(const Json& j) {
  if (j.is_string()) return QMax::parse(j.get<std::string>());
  if (j.is_number_integer()) return QMax(static_cast<long>(j.get<std::int64_t>()));
  throw ParseError("expected a scalar (string or integer)", 0);
}

Json monomial_to_json(const SymMonomial& m, std::span<const std::string> names) {
  Json exps = Json::object();
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    if (m.exponents[i] > 0) exps[name_of(i, names)] = m.exponents[i];
  }
  return Json{{"coef", scalar_to_json(m.coef)}, {"exponents", exps}};
}

SymMonomial monomial_from_json(const Json& j, std::span<const std::string> names) {
  if (!j.is_object() || !j.contains("coef")) throw ParseError("malformed monomial", 0);
  const auto idx = index_of(names);
  SymMonomial m{scalar_from_json(j.at("coef")), Exponents(names.size(), 0)};
  if (j.contains("exponents")) {
    for (const auto& [name, power] : j.at("exponents").items()) {
      auto it = idx.find(name);
      if (it == idx.end()) throw ParseError("unknown variable '" + name + "'", 0);
      if (!power.is_number_unsigned() && !(power.is_number_integer() && power.get<int>() >= 0)) {
        throw ParseError("exponents must be nonnegative integers", 0);
      }
      m.exponents[it->second] = power.get<std::uint32_t>();
    }
  }
  return m;
}

Json set_to_json(const SemiPolySet& s, std::span<const std::string> names) {
  Json vars = Json::array();
  for (std::size_t i = 0; i < s.arity; ++i) vars.push_back(name_of(i, names));
  Json parts = Json::array();
  for (const auto& p : s.parts) {
    Json part = Json::array();
    for (const auto& h : p.constraints) {
      Json c{{"lhs", monomial_to_json(h.lhs, names)}, {"rhs", monomial_to_json(h.rhs, names)}};
      if (h.strict) c["strict"] = true;
      part.push_back(std::move(c));
    }
    parts.push_back(std::move(part));
  }
  return Json{{"variables", vars}, {"parts", parts}};
}

SemiPolySet set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("variables") || !j.contains("parts")) {
    throw ParseError("a set needs \"variables\" and \"parts\"", 0);
  }
  const auto names = j.at("variables").get<std::vector<std::string>>();
  SemiPolySet s{names.size(), {}};
  for (const auto& part : j.at("parts")) {
    Polyhedron p{names.size(), {}};
    for (const auto& c : part) {
      HalfSpace h{monomial_from_json(c.at("lhs"), names), monomial_from_json(c.at("rhs"), names),
                  c.value("strict", false)};
      p.constraints.push_back(std::move(h));
    }
    s.parts.push_back(std::move(p));
  }
  return s;
}

Json realization_to_json(const Realization& r) {
  Json c = Json::array(), b = Json::array(), a = Json::array();
  for (const auto& x : r.c) c.push_back(scalar_to_json(x));
  for (const auto& x : r.b) b.push_back(scalar_to_json(x));
  for (const auto& row : r.A) {
    Json jr = Json::array();
    for (const auto& x : row) jr.push_back(scalar_to_json(x));
    a.push_back(std::move(jr));
  }
  return Json{{"dim", r.dim}, {"c", c}, {"A", a}, {"b", b}};
}

Realization realization_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim")) throw ParseError("a realization needs \"dim\"", 0);
  const auto dim = j.at("dim").get<std::size_t>();
  if (dim == 0) throw ParseError("realization dimension must be positive", 0);
  Realization r = Realization::bottom(dim);
  r.c = vector_from_json(j.at("c"), dim, "c");
  r.b = vector_from_json(j.at("b"), dim, "b");
  const auto& a = j.at("A");
  if (!a.is_array() || a.size() != dim) throw ParseError("A must have dim rows", 0);
  for (std::size_t i = 0; i < dim; ++i) r.A[i] = vector_from_json(a[i], dim, "a row of A");
  return r;
}

std::vector<QMax> point_from_json(const Json& j, std::span<const std::string> names) {
  if (j.is_array()) return vector_from_json(j, names.size(), "the point");
  if (!j.is_object() || !j.contains("values")) {
    throw ParseError("a point is an array or {\"values\": {...}}", 0);
  }
  const auto& values = j.at("values");
  std::vector<QMax> out;
  for (const auto& name : names) {
    if (!values.contains(name)) throw ParseError("the point has no value for '" + name + "'", 0);
    out.push_back(scalar_from_json(values.at(name)));
  }
  if (values.size() != names.size()) throw ParseError("the point names unknown variables", 0);
  return out;
}

Json point_to_json(std::span<const QMax> point, std::span<const std::string> names) {
  Json values = Json::object();
  for (std::size_t i = 0; i < point.size(); ++i) values[name_of(i, names)] = scalar_to_json(point[i]);
  return Json{{"values", values}};
}

}  // namespace tropreal
