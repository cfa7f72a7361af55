#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qboson/cli.hpp"
#include "qboson/module.hpp"
#include "qboson/parse.hpp"
#include "qboson/projector.hpp"

using namespace qb;

namespace {

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run(std::vector<std::string> args) {
  std::vector<const char*> argv{"qboson"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli_run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("gamma command prints the rank-one series") {
  auto r = run({"--preset", "A1", "gamma", "--cutoff", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 - f1 edd1 + q f1^(2) edd1^2\n");
}

TEST_CASE("gram command prints the base-case matrix") {
  auto r = run({"--preset", "A1", "gram", "--weight", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "[ 1/(q^-1 - q) ]\n");
}

TEST_CASE("nf command normalizes") {
  auto r = run({"--preset", "A1", "nf", "edd1 f1"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 + q^2 f1 edd1\n");

  auto bad = run({"--preset", "A2", "nf", "e3"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("UNKNOWN_INDEX") != std::string::npos);
}

TEST_CASE("pair command") {
  auto r = run({"--preset", "A1", "pair", "--x", "e1", "--y", "f1"});
  CHECK(r.code == 0);
  CHECK(r.out == "1/(q^-1 - q)\n");
}

TEST_CASE("verify commands exit zero on pass") {
  auto r = run({"--preset", "A2", "verify", "gamma", "--cutoff", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("all checks passed") != std::string::npos);

  auto h = run({"--preset", "B2", "verify", "hopf"});
  CHECK(h.code == 0);
}

TEST_CASE("identical invocations give identical bytes") {
  auto r1 = run({"--preset", "A2", "gamma", "--cutoff", "3"});
  auto r2 = run({"--preset", "A2", "gamma", "--cutoff", "3"});
  CHECK(r1.out == r2.out);
}

TEST_CASE("gamma JSON re-parses into the same element") {
  auto r = run({"--preset", "A2", "--json", "gamma", "--cutoff", "2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["datum"] == "A2");

  Context ctx(cartan_preset("A2"));
  AlgebraElement rebuilt = make_zero(ctx, Flavor::B);
  for (const auto& t : j["result"]["terms"]) {
    NormalWord w;
    for (int i : t["f_word"]) w.f_word.push_back(static_cast<uint8_t>(i - 1));
    for (int c : t["torus"]) w.torus.push_back(c);
    for (int i : t["e_word"]) w.e_word.push_back(static_cast<uint8_t>(i - 1));
    rebuilt.add_term(w, parse_scalar(t["coeff"].get<std::string>(), ctx.datum.exp_denom));
  }
  CHECK(rebuilt == build_gamma(ctx, 2).elem);
}

TEST_CASE("module build and decompose round trip through files") {
  std::string path = "test_cli_module.json";
  auto r = run({"--preset", "A1", "module", "build", "--weight", "2", "--cutoff", "4", "--out",
                path});
  REQUIRE(r.code == 0);
  auto d = run({"--preset", "A1", "module", "decompose", "--input", path});
  CHECK(d.code == 0);
  CHECK(d.out == "H(2) x 1\n");
  auto v = run({"--preset", "A1", "module", "verify", "--input", path});
  CHECK(v.code == 0);
  std::remove(path.c_str());
}

TEST_CASE("custom cartan file") {
  std::string path = "test_cli_cartan.json";
  {
    std::ofstream f(path);
    f << R"({"name":"myA2","cartan_matrix":[[2,-1],[-1,2]],"symmetrizers":[1,1]})";
  }
  auto r = run({"--cartan", path, "cartan"});
  CHECK(r.code == 0);
  CHECK(r.out.find("myA2") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit 2") {
  auto r = run({"--preset", "NOPE", "cartan"});
  CHECK(r.code == 2);
  auto r2 = run({"--preset", "A1", "gamma"});
  CHECK(r2.code == 2);  // missing required --cutoff
}
