#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "torelli_lab/io.hpp"

namespace {

const std::string kCli = TORELLI_LAB_CLI;
const std::string kTmp = std::string(TORELLI_LAB_TMP) + "/cli_";

int run(const std::string& args) {
  const int rc = std::system((kCli + " " + args + " 2>" + kTmp + "stderr.txt").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

torelli::io::Json load(const std::string& path) { return torelli::io::read_file(path); }

torelli::io::Json without_timestamp(torelli::io::Json j) {
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate and analyze") {
  REQUIRE(run("generate --h 3 --seed 1 -o " + kTmp + "s.json") == 0);
  CHECK(load(kTmp + "s.json")["dL"] == 4);
  REQUIRE(run("analyze " + kTmp + "s.json -o " + kTmp + "a.json") == 0);
  const auto a = load(kTmp + "a.json");
  CHECK(a["invariants"]["N"] == 38);
  CHECK(a["genericity"]["is_general"] == true);
  CHECK(a["schottky"]["consistent"] == true);

  CHECK(run("generate --h 2 --seed 1") == 2);
  CHECK(run("generate --seed 1") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("analyze /nonexistent.json") == 2);
}

TEST_CASE("I2 surfaces are flagged") {
  REQUIRE(run("generate --h 3 --seed 2 --i2 0,1 -o " + kTmp + "i2.json") == 0);
  REQUIRE(run("analyze " + kTmp + "i2.json -o " + kTmp + "i2a.json") == 0);
  const auto a = load(kTmp + "i2a.json");
  CHECK(a["fibers"]["I2_count"].get<int>() >= 2);
  CHECK(a["genericity"]["is_general"] == false);
  const auto clauses = a["genericity"]["failed_clauses"].get<std::vector<std::string>>();
  CHECK(std::find(clauses.begin(), clauses.end(), "c") != clauses.end());
  CHECK(run("ivhs " + kTmp + "i2.json") == 1);
}

TEST_CASE("isotrivial input exits 1") {
  std::ofstream(kTmp + "iso.json")
      << R"({"q": 0, "dL": 1, "g4": ["0","0","3","0","0"], "g6": ["0","0","0","1","0","0","0"]})";
  CHECK(run("analyze " + kTmp + "iso.json") == 1);
  CHECK(slurp(kTmp + "stderr.txt").find("isotrivial") != std::string::npos);
}

TEST_CASE("ivhs then recover") {
  REQUIRE(run("generate --h 3 --seed 1 -o " + kTmp + "s.json") == 0);
  REQUIRE(run("ivhs " + kTmp + "s.json --seed 4 -o " + kTmp + "w.json --emit-truth " + kTmp + "t.json") == 0);
  REQUIRE(run("recover " + kTmp + "w.json --truth " + kTmp + "t.json -o " + kTmp + "g.json") == 0);
  const auto g = load(kTmp + "g.json");
  CHECK(g["quadric_dim"] == 1);
  CHECK(g["match"]["max_chordal"].get<double>() < 1e-6);
}

TEST_CASE("roundtrip exit codes and determinism") {
  REQUIRE(run("roundtrip --h 3 --trials 3 --seed 5 -o " + kTmp + "r1.json") == 0);
  REQUIRE(run("roundtrip --h 3 --trials 3 --seed 5 -o " + kTmp + "r2.json") == 0);
  const auto r1 = load(kTmp + "r1.json");
  CHECK(without_timestamp(r1).dump() == without_timestamp(load(kTmp + "r2.json")).dump());
  CHECK(r1["trials"].size() == 3);
  for (const auto& t : r1["trials"]) CHECK(t["max_chordal"].get<double>() < 1e-6);

  CHECK(run("roundtrip --h 3 --seed 1 --corrupt-span -o " + kTmp + "rc.json") == 1);
  CHECK(load(kTmp + "rc.json")["trials"][0]["status"] == "error:extract");
  CHECK(slurp(kTmp + "stderr.txt").find("extract") != std::string::npos);
  CHECK(run("roundtrip --h 3 --trials 0") == 2);
}

TEST_CASE("plumb-verify and oracle") {
  REQUIRE(run("plumb-verify --trials 20 -o " + kTmp + "p.json") == 0);
  const auto p = load(kTmp + "p.json");
  CHECK(p["all_pass"] == true);
  CHECK(p["cases"][0].contains("residue_coefficient"));
  CHECK(run("plumb-verify --order 2 --trials 3 -o " + kTmp + "p2.json") == 0);
  CHECK(run("plumb-verify --order 11") == 1);

  REQUIRE(run("oracle -o " + kTmp + "o.json") == 0);
  const auto o = load(kTmp + "o.json");
  CHECK(o["agree"] == true);
  CHECK(o["bruteforce"].size() == 3);
}

}  // TEST_SUITE
