// End-to-end tests of the cluster-nz binary: exit codes, JSON shape, and
// byte-level determinism.

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#ifndef CLUSTER_NZ_BIN
#error "CLUSTER_NZ_BIN must point at the built CLI"
#endif
#ifndef CLUSTER_NZ_FIXTURES
#error "CLUSTER_NZ_FIXTURES must point at tests/fixtures"
#endif

namespace {

using Json = nlohmann::json;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CLUSTER_NZ_BIN) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return RunResult{WEXITSTATUS(status), out};
}

std::string fixture(const std::string& name) {
  return std::string(CLUSTER_NZ_FIXTURES) + "/" + name;
}

}  // namespace

TEST_CASE("run prints the A2 trajectory and loop flag") {
  RunResult r = run_cli("run " + fixture("a2.json"));
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["B"].size() == 3);
  CHECK(j["B"][0] == j["B"][2]);
  CHECK(j["mutation_loop"] == true);
  CHECK(j["Y"][2][0] == "(1 + y2 + y1*y2)/(y1)");
  CHECK(j["Y"][2][1] == "(1)/(y2 + y1*y2)");
}

TEST_CASE("run --matrices-only omits the symbolic dynamics") {
  RunResult r = run_cli("run " + fixture("mutation_loop_T3.json") + " --matrices-only");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(!j.contains("Y"));
  CHECK(j["B"].size() == 4);
}

TEST_CASE("malformed input exits 2") {
  std::string bad = std::string(CLUSTER_NZ_FIXTURES) + "/malformed.json";
  std::ofstream(bad) << "{ not json";
  CHECK(run_cli("run " + bad).exit_code == 2);
  CHECK(run_cli("run /nonexistent/file.json").exit_code == 2);
}

TEST_CASE("network matches the paper A2 example") {
  RunResult r = run_cli("network " + fixture("a2.json"));
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["N0"] == Json::parse("[[2,0],[0,2]]"));
  CHECK(j["Nplus"] == Json::parse("[[0,0],[0,0]]"));
  CHECK(j["Nminus"] == Json::parse("[[0,1],[1,0]]"));
  CHECK(j["Aplus"] == Json::parse("[[2,0],[0,2]]"));
  CHECK(j["Aminus"] == Json::parse("[[2,-1],[-1,2]]"));
  CHECK(j["fully_mutated"] == true);
}

TEST_CASE("network dot output") {
  RunResult r = run_cli("network " + fixture("a2.json") + " --output dot");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("digraph") != std::string::npos);
}

TEST_CASE("verify exits 0 on the paper examples") {
  CHECK(run_cli("verify " + fixture("mutation_loop_T3.json") + " --mode modular").exit_code == 0);
  CHECK(run_cli("verify " + fixture("a2.json") + " --mode exact --check f-det --all-signs")
            .exit_code == 0);
  CHECK(run_cli("verify " + fixture("a2.json") + " --check all").exit_code == 0);
}

TEST_CASE("verify exits 3 on a non-fully-mutated sequence") {
  std::string path = std::string(CLUSTER_NZ_FIXTURES) + "/not_fully_mutated.json";
  std::ofstream(path) << R"({"B": [[0, -1], [1, 0]], "m": [1, 1]})";
  CHECK(run_cli("verify " + path).exit_code == 3);
}

TEST_CASE("tropical command reports the C-matrix trace") {
  RunResult r = run_cli("tropical " + fixture("a2.json"));
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["C"].size() == 3);
  CHECK(j["C"][2] == Json::parse("[[-1,0],[0,-1]]"));
  CHECK(j["eps_trop"] == "++");
  CHECK(j["reddening"] == true);
  CHECK(j["maximal_green"] == true);
}

TEST_CASE("reddening exit codes") {
  RunResult found = run_cli("reddening " + fixture("a2.json") + " --depth 2");
  CHECK(found.exit_code == 0);
  Json j = Json::parse(found.out);
  CHECK(j["m"] == Json::parse("[1,2]"));
  CHECK(j["maximal_green"] == true);

  RunResult none = run_cli("reddening " + fixture("once_punctured_torus.json") + " --depth 8");
  CHECK(none.exit_code == 4);
  Json c = Json::parse(none.out);
  CHECK(c["certificate"]["all_A_columns_sum_zero"] == true);
  CHECK(c["certificate"]["all_det_A_eps_zero"] == true);
}

TEST_CASE("gluing command solves the figure-eight equations") {
  RunResult r =
      run_cli("gluing " + fixture("figure_eight.json") + " --init \"0.5,0.8 0.5,0.8\" --tol 1e-13");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(std::abs(j["volume"].get<double>() - 2.02988321281) < 1e-9);
  CHECK(j["residual"].get<double>() < 1e-12);
}

TEST_CASE("dynkin command checks the central charge identity") {
  RunResult r = run_cli("dynkin --type A --rank 2");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["rhs"] == "6/5");
  CHECK(j["abs_err"].get<double>() < 1e-10);
}

TEST_CASE("triangulate reproduces the torus matrix") {
  RunResult r = run_cli("triangulate " + fixture("torus_triangulation.json"));
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["B"] == Json::parse("[[0,2,-2],[-2,0,2],[2,-2,0]]"));
}

TEST_CASE("output is byte-identical across runs") {
  for (std::string cmd : {"run " + fixture("a2.json"), "network " + fixture("figure_eight.json"),
                          "tropical " + fixture("mutation_loop_T3.json"),
                          "verify " + fixture("a2.json") + " --mode modular --seed 5"}) {
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("golden network output") {
  RunResult r = run_cli("network " + fixture("a2.json"));
  std::ifstream golden(fixture("golden/a2_network.json"));
  REQUIRE(golden.good());
  std::string expect((std::istreambuf_iterator<char>(golden)), std::istreambuf_iterator<char>());
  CHECK(r.out == expect);
}
