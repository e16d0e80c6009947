#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace sl3k;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sl3k");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("cg prints the exact radical and its value") {
  const auto r = run({"cg", "--k", "0", "--j", "0", "--l", "1", "--m", "1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "(1/10)·√10 ≈ 0.316228\n");
  const auto j = nlohmann::json::parse(run({"--format", "json", "cg", "--k", "0", "--j", "0", "--l", "1", "--m", "1"}).out);
  CHECK(j["exact"] == "(1/10)·√10");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"cg", "--k", "0"}).code == kExitUsage);
  CHECK(run({"--format", "xml", "cg", "--k", "0", "--j", "0", "--l", "1", "--m", "1"}).code == kExitUsage);
  CHECK(run({"wigner", "--l", "1", "--m1", "3", "--m2", "0"}).code == kExitUsage);
  CHECK(run({"series", "basis", "--delta", "1,2,0", "--lmax", "2"}).code == kExitUsage);
  CHECK(run({"compose", "--preset", "even-k", "--k", "3"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("compose k3 prints three chain lines") {
  const auto r = run({"compose", "--preset", "k3"});
  CHECK(r.code == kExitOk);
  CHECK(count_lines(r.out) == 3);
  CHECK(r.out.find("length 3\n") == r.out.size() - 9);
  const auto j = nlohmann::json::parse(run({"--format", "json", "compose", "--preset", "k3"}).out);
  CHECK(j.contains("chain"));
}

TEST_CASE("verify exits 0 on a passing suite and is deterministic") {
  const auto a = run({"verify", "--suite", "orthogonality", "--lmax", "3"});
  const auto b = run({"verify", "--suite", "orthogonality", "--lmax", "3"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("orthogonality: PASS", 0) == 0);
  CHECK(run({"verify", "--suite", "nope"}).code == kExitUsage);
}

TEST_CASE("series basis and action outputs") {
  const auto csv = run({"series", "basis", "--delta", "0,0,0", "--lmax", "2"});
  CHECK(csv.out.rfind("l,m1,m2,multiplicity\n0,0,0,1\n", 0) == 0);
  CHECK(count_lines(csv.out) == 1 + 1 + 5 * 2);
  const std::string path = "test_cli_action.json";
  const auto act = run({"--out", path, "action", "--lambda", "1/2,1/3", "--delta", "0,1,1", "--gen", "Z2", "--lmax", "3"});
  CHECK(act.code == kExitOk);
  CHECK(act.out.empty());
  std::ifstream file(path);
  const auto j = nlohmann::json::parse(file);
  CHECK(j.is_object());
  std::remove(path.c_str());
}

TEST_CASE("sl2 subcommands") {
  const auto c = run({"sl2", "compose", "--nu", "1/2", "--eps", "0"});
  CHECK(c.code == kExitOk);
  CHECK(c.out.rfind("reducible", 0) == 0);
  const auto l = run({"--format", "csv", "sl2", "ladder", "--nu", "0", "--eps", "1", "--lmax", "1"});
  CHECK(l.out == "l,raise,lower\n-1,0,2\n1,2,0\n");
}
