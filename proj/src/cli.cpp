// SPDX-License-Identifier: Apache-2.0
#include "tropreal/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "tropreal/errors.hpp"
#include "tropreal/normal_form.hpp"
#include "tropreal/realization.hpp"
#include "tropreal/serialize.hpp"

namespace tropreal::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
}

std::string join(const std::vector<QMax>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ", ";
    out += x.to_string();
  }
  return out;
}

std::string realization_text(const Realization& r) {
  std::string rows;
  for (const auto& row : r.A) {
    if (!rows.empty()) rows += ", ";
    rows += "[" + join(row) + "]";
  }
  return "c = [" + join(r.c) + "]\nA = [" + rows + "]\nb = [" + join(r.b) + "]\n";
}

std::string point_text(const std::vector<QMax>& p, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!out.empty()) out += ", ";
    out += names[i] + " = " + p[i].to_string();
  }
  return out;
}

struct Problem {
  std::string series;
  std::size_t dim = 0;
  std::string template_path;
  std::size_t cap = kDefaultDimensionCap;

  std::optional<Template> tpl() const {
    if (template_path.empty()) return std::nullopt;
    return parse_template(read_file(template_path));
  }
  std::vector<std::string> names(const std::optional<Template>& t) const {
    return t ? t->names : realization_names(dim);
  }
  void check() const {
    if (template_path.empty() && dim == 0) {
      throw InvalidArgument("give a dimension with -n or a template with --template");
    }
  }
};

void add_problem(CLI::App* app, Problem& p) {
  app->add_option("-s,--series", p.series, "target series (concrete expression)")->required();
  app->add_option("-n,--dim", p.dim, "realization dimension");
  app->add_option("--template", p.template_path, "template file used instead of the universal series");
  app->add_option("--cap", p.cap, "largest dimension accepted")->capture_default_str();
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Max-plus realization sets of rational series", "tropreal"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  std::string expr, expr_a, expr_b;
  std::uint64_t max_k = 10;
  auto* normalize = app.add_subcommand("normalize", "print the canonical form of a concrete series");
  normalize->add_option("-e,--expr", expr, "expression")->required();
  auto* coeffs = app.add_subcommand("coeffs", "print coefficients 0..K");
  coeffs->add_option("-e,--expr", expr, "expression")->required();
  coeffs->add_option("-k", max_k, "last coefficient")->capture_default_str();
  auto* equal = app.add_subcommand("equal", "decide equality of two concrete series");
  equal->add_option("-a", expr_a, "first expression")->required();
  equal->add_option("-b", expr_b, "second expression")->required();

  Problem problem;
  std::string point_path, realization_path;
  std::size_t max_dim = 1;
  bool raw = false;
  auto* realize = app.add_subcommand("realize", "print the set of realizations");
  add_problem(realize, problem);
  realize->add_flag("--raw", raw, "print the expanded union without simplification");
  auto* member = app.add_subcommand("member", "test whether a point is a realization");
  add_problem(member, problem);
  member->add_option("--point", point_path, "JSON point or realization file")->required();
  auto* witness = app.add_subcommand("witness", "print one realization");
  add_problem(witness, problem);
  auto* minimal = app.add_subcommand("minimal", "search the smallest realization dimension");
  minimal->add_option("-s,--series", problem.series, "target series")->required();
  minimal->add_option("--max", max_dim, "largest dimension tried")->capture_default_str();
  minimal->add_option("--cap", problem.cap, "largest dimension accepted")->capture_default_str();
  auto* check = app.add_subcommand("verify", "check a realization against a series");
  check->add_option("-s,--series", problem.series, "target series")->required();
  check->add_option("--realization", realization_path, "JSON realization file")->required();
  check->add_option("--cap", problem.cap, "largest dimension accepted")->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", json, "machine-readable output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }

  auto bool_answer = [&](bool v) {
    if (json) {
      out << Json(v).dump() << "\n";
    } else {
      out << (v ? "true" : "false") << "\n";
    }
    return v ? kOk : kNo;
  };

  try {
    if (normalize->parsed()) {
      const CanonicalUGM g = canonicalize(parse_expr(expr));
      if (json) {
        Json tails = Json::array();
        for (const auto& [u, q] : g.tails) tails.push_back({scalar_to_json(u), scalar_to_json(q)});
        Json transient = Json::array();
        for (const auto& v : g.transient) transient.push_back(scalar_to_json(v));
        out << Json{{"expr", to_string(g)}, {"kappa", g.kappa}, {"period", g.period},
                    {"transient", transient}, {"tails", tails}}
                   .dump()
            << "\n";
      } else {
        std::string tails;
        for (const auto& [u, q] : g.tails) {
          if (!tails.empty()) tails += ", ";
          tails += "(" + u.to_string() + ", " + q.to_string() + ")";
        }
        out << to_string(g) << "\n"
            << "kappa = " << g.kappa << ", period = " << g.period << "\n"
            << "transient = [" << join(g.transient) << "]\n"
            << "tails = [" << tails << "]\n";
      }
      return kOk;
    }
    if (coeffs->parsed()) {
      const auto values = concrete_coefficients(parse_expr(expr), max_k);
      if (json) {
        Json arr = Json::array();
        for (const auto& v : values) arr.push_back(scalar_to_json(v));
        out << arr.dump() << "\n";
      } else {
        std::string line;
        for (const auto& v : values) line += (line.empty() ? "" : " ") + v.to_string();
        out << line << "\n";
      }
      return kOk;
    }
    if (equal->parsed()) return bool_answer(series_equal(parse_expr(expr_a), parse_expr(expr_b)));

    const RatExpr target = parse_expr(problem.series);
    if (realize->parsed() || member->parsed() || witness->parsed()) {
      problem.check();
      const auto tpl = problem.tpl();
      const auto names = problem.names(tpl);
      if (member->parsed()) {
        const Json pj = read_json(point_path);
        const std::vector<QMax> point =
            !tpl && pj.contains("dim") ? realization_from_json(pj).flatten() : point_from_json(pj, names);
        if (point.size() != names.size()) throw ArityMismatch("the point has the wrong dimension");
        return bool_answer(realization_set_expr(target, problem.dim, tpl, problem.cap).contains(point));
      }
      if (realize->parsed()) {
        const SemiPolySet set = realization_set(target, problem.dim, tpl, problem.cap);
        const SemiPolySet shown = raw ? set : simplified(set);
        if (json) {
          out << set_to_json(shown, names).dump() << "\n";
        } else {
          out << render(shown, names) << "\n";
        }
        return shown.parts.empty() ? kNo : kOk;
      }
      const auto w = realization_witness(target, problem.dim, tpl, problem.cap);
      if (!w) {
        out << (json ? "null" : "empty") << "\n";
        return kNo;
      }
      if (json) {
        out << (tpl ? point_to_json(*w, names)
                    : realization_to_json(Realization::unflatten(problem.dim, *w)))
                   .dump()
            << "\n";
      } else if (tpl) {
        out << point_text(*w, names) << "\n";
      } else {
        out << realization_text(Realization::unflatten(problem.dim, *w));
      }
      return kOk;
    }
    if (minimal->parsed()) {
      const auto found = minimal_realization(target, max_dim, problem.cap);
      if (!found) {
        if (json) {
          out << Json{{"dimension", nullptr}}.dump() << "\n";
        } else {
          out << "no realization of dimension <= " << max_dim << "\n";
        }
        return kNo;
      }
      const bool ok = verify(found->second, target, problem.cap);
      if (json) {
        out << Json{{"dimension", found->first},
                    {"realization", realization_to_json(found->second)},
                    {"verified", ok}}
                   .dump()
            << "\n";
      } else {
        out << "dimension = " << found->first << "\n"
            << realization_text(found->second) << "verified = " << (ok ? "true" : "false") << "\n";
      }
      return ok ? kOk : kError;
    }
    if (check->parsed()) {
      const Realization r = realization_from_json(read_json(realization_path));
      return bool_answer(verify(r, target, problem.cap));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  err << "error: no command\n";
  return kError;
}

}  // namespace tropreal::cli
