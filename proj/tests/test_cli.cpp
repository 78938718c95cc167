// Drives the installed CLI binary end to end; CLI_BINARY is injected by the
// build so the test always runs the freshly built executable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(CLI_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

json parse_report(const RunResult& result) {
  json report = json::parse(result.out);
  REQUIRE(report.contains("command"));
  REQUIRE(report.contains("parameters"));
  REQUIRE(report.contains("results"));
  REQUIRE(report.contains("violations"));
  REQUIRE(report.contains("elapsed_ms"));
  return report;
}

}  // namespace

TEST_CASE("binom subcommand evaluates residues") {
  RunResult r = run("binom 31 4 4");
  CHECK(r.exit_code == 0);
  json report = parse_report(r);
  CHECK(report["command"] == "binom");
  CHECK(report["results"][0]["value"] == 1);
  CHECK(report["violations"].empty());

  CHECK(parse_report(run("binom 0 4 4"))["results"][0]["value"] == 0);
  CHECK(parse_report(run("binom -2 3 5"))["results"][0]["value"] == 1);
}

TEST_CASE("binom engines cross-check against the recurrence oracle") {
  json pp = parse_report(run("binom 6 4 4 --engine prime-power"));
  CHECK(pp["results"][0]["value"] == 3);
  CHECK(pp["results"][0]["cross_check"]["match"] == true);

  json lucas = parse_report(run("binom 6 4 5 --engine lucas"));
  CHECK(lucas["results"][0]["value"] == 0);
  CHECK(lucas["results"][0]["cross_check"]["match"] == true);

  json crt = parse_report(run("binom 10 3 12 --engine crt"));
  CHECK(crt["results"][0]["value"] == 0);
  CHECK(crt["results"][0]["cross_check"]["match"] == true);

  CHECK(run("binom 6 4 6 --engine lucas").exit_code == 2);
  CHECK(run("binom 10 3 12 --engine prime-power").exit_code == 2);
  CHECK(run("binom -2 3 5 --engine pascal").exit_code == 2);
}

TEST_CASE("period subcommand reports and verifies the formula") {
  json report = parse_report(run("period 6 --verify"));
  CHECK(report["results"][0]["length"] == 72);
  CHECK(report["results"][0]["measured"] == 72);
  CHECK(report["results"][0]["verified"] == true);

  CHECK(parse_report(run("period 9"))["results"][0]["length"] == 81);

  RunResult budget = run("period 30 --verify --budget 1000");
  CHECK(budget.exit_code == 3);
  CHECK_FALSE(parse_report(budget)["violations"].empty());
}

TEST_CASE("prime-test subcommand") {
  CHECK(parse_report(run("prime-test 97"))["results"][0]["is_prime"] == true);
  CHECK(parse_report(run("prime-test 2"))["results"][0]["is_prime"] == true);
  json composite = parse_report(run("prime-test 15"));
  CHECK(composite["results"][0]["is_prime"] == false);
  CHECK(composite["results"][0]["witness"]["n"] == 18);
  CHECK(run("prime-test 15").exit_code == 0);
}

TEST_CASE("witness subcommand") {
  json w4 = parse_report(run("witness 4"));
  CHECK(w4["results"][0]["n"] == 31);
  CHECK(w4["results"][0]["progression_index"] == 2);
  CHECK(w4["results"][0]["branch"] == "even");
  CHECK(w4["results"][0]["kind"] == "prime-witness");

  json w9 = parse_report(run("witness 9"));
  CHECK(w9["results"][0]["n"] == 13);
  CHECK(w9["results"][0]["progression_index"] == 0);
  CHECK(w9["results"][0]["branch"] == "odd");

  CHECK(run("witness 7").exit_code == 2);
  CHECK(run("witness 4 --k-max 0").exit_code == 3);
}

TEST_CASE("window emits exact CSV") {
  RunResult csv = run("window 4 -2 3 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out == "n,value\n-2,1\n-1,1\n0,0\n");

  RunResult twenty = run("window 4 0 20 --format csv");
  CHECK(twenty.out.substr(0, 26) == "n,value\n0,0\n1,0\n2,0\n3,0\n4,");
  size_t rows = 0;
  for (char ch : twenty.out)
    if (ch == '\n') ++rows;
  CHECK(rows == 21);  // header + 20 rows

  RunResult two = run("window 2 0 4 --format csv");
  CHECK(two.out == "n,value\n0,0\n1,0\n2,1\n3,1\n");
}

TEST_CASE("window emits JSON reports and honours the budget") {
  json report = parse_report(run("window 4 0 5"));
  REQUIRE(report["results"].size() == 5);
  CHECK(report["results"][4]["n"] == 4);
  CHECK(report["results"][4]["value"] == 1);
  json neg = parse_report(run("window 4 -2 3"));
  CHECK(neg["results"][0]["n"] == -2);
  CHECK(neg["results"][0]["value"] == 1);

  CHECK(run("window 4 0 100 --budget 10").exit_code == 3);
}

TEST_CASE("sweep produces one record per applicable check") {
  const char* path = "/tmp/binomod_test_sweep.json";
  RunResult r = run(std::string("sweep 2 36 --checks thm14 -o ") + path);
  CHECK(r.exit_code == 0);

  std::ifstream file(path);
  REQUIRE(file.good());
  json from_file = json::parse(file);
  REQUIRE(from_file["results"].size() == 35);
  for (const auto& record : from_file["results"]) {
    CHECK(record["check"] == "thm14");
    CHECK(record["ok"] == true);
    CHECK(record["formula"] == record["measured"]);
  }
  CHECK(from_file["results"][0]["m"] == 2);
  CHECK(from_file["results"][34]["m"] == 36);
  std::remove(path);

  // stdout carries the same report; round-trip it.
  json report = parse_report(r);
  json reparsed = json::parse(report.dump());
  CHECK(reparsed == report);
}

TEST_CASE("sweep with every check stays clean on a small range") {
  RunResult r = run("sweep 2 20");
  CHECK(r.exit_code == 0);
  json report = parse_report(r);
  CHECK(report["violations"].empty());
  uint64_t last_m = 0;
  size_t lem22_records = 0, thm24_records = 0;
  for (const auto& record : report["results"]) {
    uint64_t m = record["m"];
    CHECK(m >= last_m);
    last_m = m;
    CHECK(record["ok"] == true);
    if (record["check"] == "lem22") {
      CHECK(m % 2 == 0);
      ++lem22_records;
    }
    if (record["check"] == "thm24") ++thm24_records;
  }
  CHECK(lem22_records == 10);  // even m in [2, 20]
  CHECK(thm24_records == 11);  // composite m in [4, 20]
}

TEST_CASE("exit codes separate usage, budget, and i/o failures") {
  CHECK(run("sweep 5 4").exit_code == 2);
  CHECK(run("sweep 2 3 --checks bogus").exit_code == 2);
  CHECK(run("binom 31 4").exit_code == 2);
  CHECK(run("nonsense 1 2 3").exit_code == 2);
  CHECK(run("sweep 2 4 --checks cor15 -o /nonexistent-dir/out.json").exit_code == 4);
}
