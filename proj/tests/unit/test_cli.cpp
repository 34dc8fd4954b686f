#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "g4cli/cli.hpp"

using namespace g4;
using namespace g4::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"g4"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST_CASE("list dumps the catalog") {
  const Outcome all = run_cli({"list"});
  REQUIRE(all.code == kExitPass);
  CHECK(parse(all.out)["groups"].size() == 15);

  const Outcome viii = run_cli({"list", "--group", "g4-viii-a"});
  REQUIRE(viii.code == kExitPass);
  const auto groups = parse(viii.out)["groups"];
  REQUIRE(groups.size() == 1);
  std::vector<std::string> symbols;
  for (const auto& c : groups[0]["structure_constants"]) {
    symbols.push_back(c["symbol"]);
    CHECK(std::abs(c["value"].get<double>()) == 1.0);
  }
  CHECK(symbols == std::vector<std::string>{"C^1_23", "C^2_13", "C^3_12"});
  CHECK(groups[0]["structure_constants"][1]["value"] == -1.0);

  const Outcome bad = run_cli({"list", "--group", "nosuch"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.out.empty());
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("verify exit codes") {
  CHECK(run_cli({"verify", "--group", "g4-i-cne1", "--param", "c=1"}).code == kExitUsage);
  CHECK(run_cli({"verify", "--param", "nosuch=1"}).code == kExitUsage);
  CHECK(run_cli({"verify", "--param", "eta=diag:1,1"}).code == kExitUsage);
  CHECK(run_cli({"verify", "--format", "yaml"}).code == kExitUsage);
  CHECK(run_cli({"verify", "--points", "0"}).code == kExitUsage);
  CHECK(run_cli({"verify", "--tol-exact", "-1"}).code == kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == kExitUsage);
  CHECK(run_cli({"verify", "--group", "g4-ii", "--points", "20", "--tol-deriv", "1e-30"}).code == kExitFailure);
}

TEST_CASE("verify report structure") {
  const Outcome o = run_cli({"verify", "--group", "g4-vi-1", "--points", "40"});
  REQUIRE(o.code == kExitPass);
  const auto j = parse(o.out);
  CHECK(j["schema"] == 1);
  CHECK(j["config"]["points"] == 40);
  bool zero_field = false;
  int pass = 0, fail = 0, flag = 0;
  for (const auto& r : j["results"]) {
    if (r["check"] == "abelian_zero_field") zero_field = r["status"] == "PASS";
    pass += r["status"] == "PASS";
    fail += r["status"] == "FAIL";
    flag += r["status"] == "FLAG";
  }
  CHECK(zero_field);
  const auto& s = j["summary"]["groups"]["g4-vi-1"];
  CHECK(s["pass"] == pass);
  CHECK(s["fail"] == fail);
  CHECK(s["flag"] == flag);
  CHECK(j["summary"]["total"]["checks"] == j["results"].size());
  CHECK_FALSE(j["inconsistencies"].empty());
}

TEST_CASE("verify reports are byte-identical for the same config") {
  const Outcome a = run_cli({"verify", "--group", "all", "--seed", "42", "--points", "30", "--format", "json"});
  const Outcome b = run_cli({"verify", "--group", "all", "--seed", "42", "--points", "30", "--format", "json"});
  REQUIRE(a.code == kExitPass);
  CHECK(a.out == b.out);
  const Outcome c = run_cli({"verify", "--group", "all", "--seed", "43", "--points", "30", "--format", "json"});
  CHECK(a.out != c.out);
}

TEST_CASE("seed falls back to G4_SEED") {
  ::setenv("G4_SEED", "1234", 1);
  const Outcome env = run_cli({"verify", "--group", "g4-iv", "--points", "5"});
  const Outcome flag = run_cli({"verify", "--group", "g4-iv", "--points", "5", "--seed", "99"});
  ::setenv("G4_SEED", "abc", 1);
  const Outcome bad = run_cli({"verify", "--group", "g4-iv", "--points", "5"});
  ::unsetenv("G4_SEED");
  CHECK(parse(env.out)["config"]["seed"] == 1234);
  CHECK(parse(flag.out)["config"]["seed"] == 99);
  CHECK(bad.code == kExitUsage);
}

TEST_CASE("human and csv formats") {
  const Outcome h = run_cli({"verify", "--group", "g4-iii", "--points", "20", "--format", "human"});
  CHECK(h.code == kExitPass);
  CHECK(h.out.find("FLAG") != std::string::npos);
  CHECK(h.out.find("RESULT: PASS") != std::string::npos);
  const Outcome c = run_cli({"verify", "--group", "g4-iii", "--points", "20", "--format", "csv"});
  CHECK(c.out.rfind("group,check,variant,mode,n_points,max_residual,tolerance,status\n", 0) == 0);
}

TEST_CASE("parameter overrides") {
  GroupParams p;
  apply_param(p, "c=3.5");
  apply_param(p, "alpha-angle=0.5");
  apply_param(p, "alpha3=-2");
  apply_param(p, "eta=diag:1,1,1,1");
  apply_param(p, "eps01=0");
  CHECK(p.c == 3.5);
  CHECK(p.alpha_angle == 0.5);
  CHECK(p.em_alphas[2] == -2.0);
  CHECK(p.eta == euclidean_eta());
  CHECK(p.eps01 == 0);
  CHECK_THROWS_AS(apply_param(p, "alpha5=1"), UsageError);
  CHECK_THROWS_AS(apply_param(p, "c"), UsageError);
  CHECK_THROWS_AS(apply_param(p, "k=x"), UsageError);
  CHECK_THROWS_AS(resolve_groups("g4-ix"), UsageError);
  CHECK(resolve_groups("all").size() == 15);
}

TEST_CASE("simulate") {
  const auto path = (std::filesystem::temp_directory_path() / "g4_cli_traj.csv").string();
  const Outcome o = run_cli({"simulate", "--out", path.c_str()});
  REQUIRE(o.code == kExitPass);
  const auto j = parse(o.out);
  for (const auto& [k, v] : j["max_abs_drift"].items()) CHECK(v.get<double>() <= 1e-8);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,u1,u2,u3,u4,p1,p2,p3,p4,H,Y1,Y2,Y3,Y4");
  std::filesystem::remove(path);

  const Outcome free = run_cli({"simulate", "--param", "alpha1=0", "--param", "alpha2=0", "--param", "alpha3=0",
                                "--param", "alpha4=0", "--T", "0.2"});
  REQUIRE(free.code == kExitPass);
  for (const auto& [k, v] : parse(free.out)["max_abs_drift"].items()) CHECK(v.get<double>() <= 1e-8);

  CHECK(run_cli({"simulate", "--h", "0"}).code == kExitUsage);
  CHECK(run_cli({"simulate", "--T", "-1"}).code == kExitUsage);
  CHECK(run_cli({"simulate", "--u0", "9,0,0,0"}).code == kExitUsage);
  CHECK(run_cli({"simulate", "--group", "all"}).code == kExitUsage);
  const Outcome csv = run_cli({"simulate", "--T", "0.01", "--format", "csv"});
  CHECK(csv.out.rfind("t,u1,u2,u3,u4,", 0) == 0);
}
