// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tropreal/cli.hpp"
#include "tropreal/serialize.hpp"

using namespace tropreal;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("tropreal_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

const std::string kTemplate = std::string(TROPREAL_SOURCE_DIR) + "/templates/diag2.tpl";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("coefficients and equality") {
    auto r = run({"coeffs", "-e", "0 + X (1 X)*", "-k", "4"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "0 0 1 2 3\n");
    r = run({"coeffs", "-e", "(1/2 X)*", "-k", "2", "--json"});
    CHECK(r.out == "[\"0\",\"1/2\",\"1\"]\n");
    r = run({"equal", "-a", "(X)*", "-b", "0 + 0 X (0 X)*"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "true\n");
    r = run({"equal", "-a", "(X)*", "-b", "(1 X)*"});
    CHECK(r.code == cli::kNo);
    CHECK(r.out == "false\n");
  }

  TEST_CASE("normalize") {
    const auto r = run({"normalize", "-e", "-3 (0 X)* + (-1 X)*"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("kappa = 3, period = 1") != std::string::npos);
    CHECK(r.out.find("transient = [0, -1, -2]") != std::string::npos);
    CHECK(r.out.find("tails = [(-3, 0)]") != std::string::npos);
    const auto j = run({"normalize", "-e", "(X^2)* + 1 X (1 X^2)*", "--json"});
    const Json parsed = Json::parse(j.out);
    CHECK(parsed.at("period") == 2);
  }

  TEST_CASE("realize with a template") {
    auto r = run({"realize", "-s", "0 + X (1 X)*", "--template", kTemplate});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "u1 = -1, v1 = 1, u2 = 0, v2 <= 1\n");
    r = run({"realize", "-s", "0 + X (1 X)*", "--template", kTemplate, "--json"});
    const SemiPolySet s = set_from_json(Json::parse(r.out));
    CHECK(s.arity == 4);
    CHECK(render(s, std::vector<std::string>{"u1", "v1", "u2", "v2"}) == "u1 = -1, v1 = 1, u2 = 0, v2 <= 1");
    r = run({"realize", "-s", "0 + X (1 X)*", "-n", "1"});
    CHECK(r.code == cli::kNo);
    CHECK(r.out == "empty\n");
  }

  TEST_CASE("member, witness, verify, minimal") {
    const std::string good = temp_file("good.json", R"({"values": {"u1": -1, "v1": 1, "u2": 0, "v2": "-inf"}})");
    const std::string bad = temp_file("bad.json", R"([-1, 1, 0, 2])");
    CHECK(run({"member", "-s", "0 + X (1 X)*", "--template", kTemplate, "--point", good}).out == "true\n");
    auto r = run({"member", "-s", "0 + X (1 X)*", "--template", kTemplate, "--point", bad});
    CHECK(r.code == cli::kNo);
    CHECK(r.out == "false\n");

    r = run({"witness", "-s", "0 + 2 X^2 (1 X)*", "-n", "2", "--json"});
    CHECK(r.code == cli::kOk);
    const std::string w = temp_file("w.json", r.out);
    CHECK(run({"verify", "-s", "0 + 2 X^2 (1 X)*", "--realization", w}).out == "true\n");
    CHECK(run({"member", "-s", "0 + 2 X^2 (1 X)*", "-n", "2", "--point", w}).out == "true\n");
    CHECK(run({"verify", "-s", "0 + 3 X^2 (1 X)*", "--realization", w}).code == cli::kNo);
    CHECK(run({"witness", "-s", "0 + X (1 X)*", "-n", "1"}).out == "empty\n");

    r = run({"minimal", "-s", "0 + X (1 X)*", "--max", "2"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.rfind("dimension = 2\n", 0) == 0);
    CHECK(r.out.find("verified = true") != std::string::npos);
    r = run({"minimal", "-s", "0 + X (1 X)*", "--max", "1"});
    CHECK(r.code == cli::kNo);
  }

  TEST_CASE("errors and determinism") {
    auto r = run({"coeffs", "-e", "(1 X"});
    CHECK(r.code == cli::kError);
    CHECK(r.err.find("position") != std::string::npos);
    CHECK(run({"bogus"}).code == cli::kError);
    CHECK(run({"realize", "-s", "X*"}).code == cli::kError);
    r = run({"realize", "-s", "X*", "-n", "4"});
    CHECK(r.code == cli::kError);
    CHECK(r.err.find("cap") != std::string::npos);
    CHECK(run({"equal", "-a", "(0 + X)*", "-b", "X*"}).code == cli::kError);
    const std::vector<std::string> args{"realize", "-s", "2 (3 X)*", "-n", "1", "--json"};
    CHECK(run(args).out == run(args).out);
    CHECK(run({"--help"}).code == cli::kOk);
  }
}
