#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "tropgw/rational.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
  int exitCode;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string outFile = "cli_test_out.txt";
  std::string cmd = std::string(TROPGW_BIN) + " " + args + " > " + outFile + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(outFile);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(outFile.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, ss.str()};
}

}  // namespace

TEST_CASE("invariant subcommand") {
  auto r = run("invariant --degree 2 --psi 4");
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("1/8") != std::string::npos);

  auto big = run("invariant --degree 3 --psi 0,0,0,0,0,0,0,0 --base table");
  CHECK(big.exitCode == 0);
  CHECK(big.out.find("12/1") != std::string::npos);

  auto bad = run("invariant --degree 1 --psi 1,0");
  CHECK(bad.exitCode == 2);
  CHECK(bad.out.find("dimension mismatch") != std::string::npos);

  auto usage = run("invariant --psi 1");
  CHECK(usage.exitCode == 1);
}

TEST_CASE("json output round-trips") {
  auto r = run("invariant --degree 2 --psi 1,0,0,0 --json");
  REQUIRE(r.exitCode == 0);
  json j = json::parse(r.out);
  CHECK(j["schema"] == "tropgw/1");
  tropgw::Rational value(mpz_class(j["value"]["num"].get<std::string>()),
                         mpz_class(j["value"]["den"].get<std::string>()));
  tropgw::Rational labelled(
      mpz_class(j["labelled_value"]["num"].get<std::string>()),
      mpz_class(j["labelled_value"]["den"].get<std::string>()));
  CHECK(value * tropgw::Rational(tropgw::factorial_cubed(2)) == labelled);
}

TEST_CASE("ragrug subcommand") {
  auto r = run("ragrug --degree 3 --form 2,2,0,0 --list");
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("mu(F) = 1/2") != std::string::npos);
  CHECK(r.out.find("N'_rr = 3/1") != std::string::npos);

  auto bad = run("ragrug --degree 2 --form 1,1");
  CHECK(bad.exitCode == 2);

  auto j = run("ragrug --degree 1 --form 0,0 --list --json");
  REQUIRE(j.exitCode == 0);
  json parsed = json::parse(j.out);
  CHECK(parsed["value"]["num"] == "1");
  REQUIRE(parsed["rugs"].size() == 1);
  CHECK(parsed["rugs"][0]["subdivisions"].size() >= 1);
}

TEST_CASE("oracle and detkernel subcommands") {
  auto r = run("oracle --degree 2 --psi 3,0 --seed 11 --json");
  REQUIRE(r.exitCode == 0);
  json j = json::parse(r.out);
  CHECK(j["value"]["num"] == "1");
  CHECK(j["value"]["den"] == "2");

  auto dk = run("detkernel --matrix 2,0;3,5");
  CHECK(dk.exitCode == 0);
  CHECK(dk.out.find("10") != std::string::npos);
  CHECK(dk.out.find("agree") != std::string::npos);
}

TEST_CASE("cache on/off produces identical values") {
  std::string cacheFile = "cli_test_cache.tsv";
  std::remove(cacheFile.c_str());
  auto r1 = run("invariant --degree 2 --psi 2,1 --cache " + cacheFile + " --json");
  auto r2 = run("invariant --degree 2 --psi 2,1 --cache " + cacheFile + " --json");
  auto r3 = run("invariant --degree 2 --psi 2,1 --json");
  REQUIRE(r1.exitCode == 0);
  REQUIRE(r2.exitCode == 0);
  REQUIRE(r3.exitCode == 0);
  json j1 = json::parse(r1.out), j2 = json::parse(r2.out), j3 = json::parse(r3.out);
  CHECK(j1["value"] == j2["value"]);
  CHECK(j1["value"] == j3["value"]);
  CHECK(j2["method"] == "cache");
  std::ifstream in(cacheFile);
  REQUIRE(static_cast<bool>(in));
  std::string line;
  bool sawQuery = false;
  while (std::getline(in, line))
    if (line.find("d=2;l=0;m=0;rs=2,1\t") == 0) sawQuery = true;
  CHECK(sawQuery);
  std::remove(cacheFile.c_str());
}

TEST_CASE("paths subcommand") {
  auto r = run("paths --degree 1");
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("mu+") != std::string::npos);
}
