#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "revshare/cli.hpp"
#include "revshare/output.hpp"

using namespace revshare;
using namespace revshare::cli;

namespace {

std::vector<std::string> Args(std::initializer_list<std::string> a) {
  std::vector<std::string> v{"revshare"};
  v.insert(v.end(), a);
  return v;
}

struct Ran {
  int code;
  std::string out;
  std::string err;
};

Ran Run(std::initializer_list<std::string> a) {
  std::ostringstream out, err;
  const int code = run(parse_args(Args(a)), out, err);
  return {code, out.str(), err.str()};
}

Ran Exec(const std::string& args) {
  const std::string cmd = std::string(REVSHARE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WEXITSTATUS(status), out, ""};
}

}  // namespace

TEST_CASE("parse: solve") {
  const auto s = parse_args(Args({"solve", "--scenario", "symmetric-competitive", "--r", "10",
                                  "--c", "0.5", "--n", "2", "--format", "json"}));
  CHECK(s.command == Command::kSolve);
  CHECK(*s.r == 10.0);
  CHECK(s.costs == std::vector<double>{0.5});
  CHECK(*s.n == 2);
  CHECK(s.format == Format::kJson);
}

TEST_CASE("parse: sweep axis") {
  const auto s = parse_args(Args({"sweep", "--scenario", "compare-coop-comp", "--r", "10", "--c",
                                  "0.5,1", "--sweep", "c2:0.5:4:8", "--format", "csv"}));
  REQUIRE(s.sweep);
  CHECK(s.sweep->param == "c2");
  CHECK(s.sweep->from == 0.5);
  CHECK(s.sweep->to == 4.0);
  CHECK(s.sweep->steps == 8);
}

TEST_CASE("parse: usage errors name the flag") {
  auto expect = [](std::initializer_list<std::string> a, const std::string& flag) {
    try {
      parse_args(Args(a));
      FAIL("no error for " << flag);
    } catch (const UsageError& e) {
      CHECK(std::string(e.what()).find(flag) != std::string::npos);
    }
  };
  expect({"solve", "--scenario", "symmetric-competitive", "--c", "0.5", "--n", "2"}, "--r");
  expect({"solve", "--scenario", "bogus", "--r", "10", "--c", "0.5"}, "--scenario");
  expect({"solve", "--scenario", "asymmetric-competitive", "--r", "10", "--c", "0.5"}, "--c");
  expect({"solve", "--scenario", "symmetric-competitive", "--r", "10", "--c", "0.5", "--n",
          "1.5"},
         "--n");
  expect({"solve", "--scenario", "symmetric-competitive", "--r", "x", "--c", "0.5", "--n", "2"},
         "--r");
  expect({"solve", "--scenario", "regulated-cooperative", "--r", "10", "--c", "0.5,1",
          "--branch", "isp3"},
         "--branch");
  expect({"sweep", "--scenario", "asymmetric-competitive", "--r", "10", "--c", "0.5,1",
          "--sweep", "q:1:2:3"},
         "--sweep");
  expect({"solve", "--scenario", "public-private-regulated", "--r", "10", "--c", "0.5,1"},
         "--a1-bar");
  expect({"solve", "--scenario", "asymmetric-competitive", "--r", "10", "--c", "0.5,1",
          "--format", "xml"},
         "--format");
  CHECK_THROWS_AS(parse_args(Args({})), UsageError);
  CHECK_THROWS_AS(parse_args(Args({"solve", "--bogus"})), UsageError);
  CHECK_THROWS_AS(parse_args(Args({"--help"})), HelpRequested);
}

TEST_CASE("solve json and csv carry the same values") {
  const auto js = Run({"solve", "--scenario", "asymmetric-competitive", "--r", "10", "--c",
                       "0.5,1", "--format", "json"});
  const auto cs = Run({"solve", "--scenario", "asymmetric-competitive", "--r", "10", "--c",
                       "0.5,1", "--format", "csv"});
  REQUIRE(js.code == 0);
  REQUIRE(cs.code == 0);
  const auto j = output::Json::parse(js.out);
  const auto flat = output::flatten(j);
  std::istringstream lines(cs.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header.find("utilities.cp") != std::string::npos);
  for (const auto& [k, v] : flat) {
    if (v.find(',') == std::string::npos) CHECK(row.find(v) != std::string::npos);
  }
  CHECK(output::to_csv({j}) == cs.out);
}

TEST_CASE("degenerate parameters give the zero outcome") {
  const auto r = Run({"solve", "--scenario", "asymmetric-competitive", "--r", "1.0", "--c",
                      "0.5,1", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = output::Json::parse(r.out);
  CHECK(j["degenerate"] == true);
  CHECK(j["utilities"]["cp"].get<double>() == 0.0);
  CHECK(j["efforts"]["total"].get<double>() == 0.0);
}

TEST_CASE("sweep rows stay in order") {
  const auto r = Run({"sweep", "--scenario", "symmetric-competitive", "--r", "10", "--c", "0.5",
                      "--n", "1", "--sweep", "n:1:10", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int count = 0;
  double prev_beta = 2.0;
  const auto j = output::Json::parse(
      Run({"sweep", "--scenario", "symmetric-competitive", "--r", "10", "--c", "0.5", "--n", "1",
           "--sweep", "n:1:10", "--format", "json"})
          .out);
  REQUIRE(j.is_array());
  for (const auto& row : j) {
    const double b = row["contract"]["shares"][0].get<double>();
    CHECK(b < prev_beta);
    prev_beta = b;
    ++count;
  }
  CHECK(count == 10);
}

TEST_CASE("compare exit status and config file") {
  const auto r = Run({"compare", "--scenario", "compare-coop-comp", "--r", "10", "--c",
                      "0.5,1", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(output::Json::parse(r.out)["all_hold"] == true);

  const auto path = std::filesystem::temp_directory_path() / "revshare_cfg_test.json";
  {
    std::ofstream f(path);
    f << R"({"scenario": "symmetric-cooperative", "r": 10, "c": [0.5], "n": 2})";
  }
  const auto a = parse_args(Args({"solve", "--config", path.string(), "--r", "12"}));
  CHECK(*a.r == 12.0);
  CHECK(*a.n == 2);
  CHECK(a.scenario == "symmetric-cooperative");
  {
    std::ofstream f(path);
    f << R"({"scenario": "symmetric-cooperative", "rate": 10})";
  }
  CHECK_THROWS_AS(parse_args(Args({"solve", "--config", path.string()})), UsageError);
  std::filesystem::remove(path);
}

TEST_CASE("shapley and nbs subcommands") {
  const auto s = Run({"shapley", "--r", "10", "--c", "0.5,1", "--format", "json"});
  CHECK(s.code == 0);
  const auto sj = output::Json::parse(s.out);
  REQUIRE(sj.is_array());
  CHECK(sj.size() == 2);
  CHECK(sj[0].contains("discrepancy"));
  CHECK(sj[1]["branch"] == "isp2");
  const auto b = Run({"nbs", "--r", "10", "--c", "0.5,1", "--disagreement", "zero", "--format",
                      "json"});
  CHECK(b.code == 0);
}

TEST_CASE("binary: exit codes and byte-identical output") {
  const std::string args =
      "solve --scenario symmetric-competitive --r 10 --c 0.5 --n 2 --format json";
  const auto a = Exec(args);
  const auto b = Exec(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(Exec("solve --scenario nope --r 10 --c 0.5").code == 1);
  CHECK(Exec("solve").code == 1);
  CHECK(Exec("--help").code == 0);
}
