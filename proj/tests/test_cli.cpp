#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

#ifndef SYMBREAK_BIN
#error "SYMBREAK_BIN must point at the command-line binary"
#endif

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("symbreak_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

int run(const std::string& args) {
  const std::string cmd = std::string(SYMBREAK_BIN) + " " + args +
                          " > /dev/null 2> /dev/null";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

const std::string kSmallConfig = R"({
  "problem": {"N": 4, "alpha": 3.0, "A": 10.0,
    "nonlinearity": {"kind": "pure_power", "p": 5, "p1": 5, "p2": 5}},
  "grids": {"radial_nodes": 400, "cyl_nodes": 24},
  "A_list": [10, 30, 100],
  "K_list": [2],
  "classify": {"alpha_min": 1.0, "alpha_max": 3.0,
               "p_min": 2.5, "p_max": 4.5, "resolution": 5},
  "nu": {"N_min": 4, "N_max": 6}
})";

}  // namespace

TEST_CASE("classify emits the region grid and the threshold curve") {
  TempDir tmp;
  write(tmp.path / "cfg.json", kSmallConfig);
  REQUIRE(run("classify --config " + (tmp.path / "cfg.json").string() +
              " --out " + (tmp.path / "out").string()) == 0);
  const std::string csv = slurp(tmp.path / "out" / "classify.csv");
  CHECK(csv.find("alpha,p,region,citations") != std::string::npos);
  CHECK(csv.find("RadialExists") != std::string::npos);
  CHECK(csv.find("NoSolution") != std::string::npos);
  // the alpha = 2 column keeps only the crossing point
  CHECK(csv.find("2,4,ExplicitRadial") != std::string::npos);
  CHECK(csv.find("2,2.5,NoSolution") != std::string::npos);
  CHECK(fs::exists(tmp.path / "out" / "pstar_curve.csv"));
  CHECK(fs::exists(tmp.path / "out" / "config.json"));
}

TEST_CASE("nu tabulates the count over N") {
  TempDir tmp;
  write(tmp.path / "cfg.json", R"({
    "problem": {"N": 4, "alpha": 3.0,
      "nonlinearity": {"kind": "double_power_min", "p1": 3, "p2": 8}},
    "nu": {"N_min": 4, "N_max": 10}})");
  REQUIRE(run("nu --config " + (tmp.path / "cfg.json").string() + " --out " +
              (tmp.path / "out").string()) == 0);
  const std::string csv = slurp(tmp.path / "out" / "nu.csv");
  CHECK(csv.find("4,1,1,2,2,") != std::string::npos);
  CHECK(csv.find("10,5,") != std::string::npos);
}

TEST_CASE("radial sweep emits one row per A and is deterministic") {
  TempDir tmp;
  write(tmp.path / "cfg.json", kSmallConfig);
  const std::string base = "radial --config " +
                           (tmp.path / "cfg.json").string();
  REQUIRE(run(base + " --out " + (tmp.path / "o1").string()) == 0);
  REQUIRE(run(base + " --out " + (tmp.path / "o2").string()) == 0);
  const std::string a = slurp(tmp.path / "o1" / "radial.csv");
  CHECK(a == slurp(tmp.path / "o2" / "radial.csv"));
  CHECK(a.find("A,level,iterations,residual,min_value") != std::string::npos);
  // three data rows
  int rows = 0;
  for (char ch : a)
    if (ch == '\n') ++rows;
  CHECK(rows >= 6);
}

TEST_CASE("config round-trips through the emitted copy") {
  TempDir tmp;
  write(tmp.path / "cfg.json", kSmallConfig);
  REQUIRE(run("radial --config " + (tmp.path / "cfg.json").string() +
              " --out " + (tmp.path / "o1").string()) == 0);
  // rerun from the resolved config; results must be identical
  REQUIRE(run("radial --config " + (tmp.path / "o1" / "config.json").string() +
              " --out " + (tmp.path / "o2").string()) == 0);
  CHECK(slurp(tmp.path / "o1" / "radial.csv") ==
        slurp(tmp.path / "o2" / "radial.csv"));
  CHECK(slurp(tmp.path / "o2" / "config.json")
            .find("\"radial_nodes\": 400") != std::string::npos);
}

TEST_CASE("environment variable overrides the output directory") {
  TempDir tmp;
  write(tmp.path / "cfg.json", kSmallConfig);
  const std::string envdir = (tmp.path / "envout").string();
  const std::string cmd = "SYMBREAK_OUT_DIR=" + envdir + " " + SYMBREAK_BIN +
                          " nu --config " + (tmp.path / "cfg.json").string() +
                          " --out " + (tmp.path / "flagout").string() +
                          " > /dev/null 2> /dev/null";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(fs::exists(fs::path(envdir) / "nu.csv"));
  CHECK_FALSE(fs::exists(tmp.path / "flagout"));
}

TEST_CASE("exit codes distinguish config and io failures") {
  TempDir tmp;
  CHECK(run("radial --config /no/such/file.json --out " +
            (tmp.path / "out").string()) == 3);
  write(tmp.path / "bad.json", R"({"problem": {"N": 4, "alpha": 2.0}})");
  CHECK(run("radial --config " + (tmp.path / "bad.json").string() +
            " --out " + (tmp.path / "out").string()) == 1);
  write(tmp.path / "badk.json",
        R"({"problem": {"N": 4, "alpha": 3.0}, "K_list": [3]})");
  CHECK(run("break --config " + (tmp.path / "badk.json").string() +
            " --out " + (tmp.path / "out").string()) == 1);
  write(tmp.path / "badjson.json", "{nope");
  CHECK(run("nu --config " + (tmp.path / "badjson.json").string() +
            " --out " + (tmp.path / "out").string()) == 1);
  CHECK(run("frobnicate") == 1);
}

TEST_CASE("testfn command reports threshold and slope") {
  TempDir tmp;
  write(tmp.path / "cfg.json", R"({
    "problem": {"N": 4, "alpha": 3.0,
      "nonlinearity": {"kind": "double_power_min", "p1": 3, "p2": 8}},
    "A_list": [100, 1000, 10000],
    "K_list": [2],
    "tolerances": {"quad_order": 32}})");
  REQUIRE(run("testfn --config " + (tmp.path / "cfg.json").string() +
              " --out " + (tmp.path / "out").string()) == 0);
  const std::string csv = slurp(tmp.path / "out" / "testfn.csv");
  CHECK(csv.find("A,K,grad2,pot2,Fint,ratio,lambda,energy,bound,discrepancy") !=
        std::string::npos);
  const std::string sum = slurp(tmp.path / "out" / "testfn_summary.csv");
  CHECK(sum.find("K,A_K,ratio_slope,ratio_monotone") != std::string::npos);
  CHECK(sum.find("2,100,") != std::string::npos);
}

TEST_CASE("break command emits levels, deviations and the summary") {
  TempDir tmp;
  write(tmp.path / "cfg.json", R"({
    "problem": {"N": 4, "alpha": 3.0,
      "nonlinearity": {"kind": "double_power_min", "p1": 3, "p2": 8}},
    "grids": {"radial_nodes": 500, "cyl_nodes": 32},
    "A_list": [5, 50],
    "K_list": [2],
    "workers": 2})");
  REQUIRE(run("break --config " + (tmp.path / "cfg.json").string() +
              " --out " + (tmp.path / "out").string()) == 0);
  const std::string csv = slurp(tmp.path / "out" / "break.csv");
  CHECK(csv.find("A,K,m_A,c_AK,deviation,broken") != std::string::npos);
  CHECK(csv.find("deviation_threshold 0.1") != std::string::npos);
  const std::string sum = slurp(tmp.path / "out" / "break_summary.csv");
  CHECK(sum.find("K,A_tilde") != std::string::npos);
}
