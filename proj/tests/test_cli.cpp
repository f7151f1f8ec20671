#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string cli = CONTACTMECH_CLI_PATH;

int run(const std::string& args) {
  std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

int run_env(const std::string& env, const std::string& args) {
  std::string cmd = env + " \"" + cli + "\" " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Csv {
  std::string header;
  std::vector<std::vector<double>> rows;
};

Csv read_csv(const std::string& path) {
  Csv out;
  std::ifstream in(path);
  std::getline(in, out.header);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

TEST_CASE("simulate integrates a configured hamiltonian") {
  write_file("cli_reeb.json", R"({
    "schema": 1,
    "kind": "hamiltonian",
    "expression": "z",
    "initial": [0.0, 1.0, 1.0],
    "t_span": [0.0, 1.0],
    "step": 0.001,
    "monitors": ["hamiltonian", "conformal"],
    "csv": "cli_reeb.csv"
  })");
  CHECK(run("simulate cli_reeb.json") == 0);

  Csv csv = read_csv("cli_reeb.csv");
  CHECK(csv.header == "t,q,p,z,H,conformal");
  REQUIRE(!csv.rows.empty());
  const auto& last = csv.rows.back();
  REQUIRE(last.size() == 6);
  CHECK(last[0] == doctest::Approx(1.0));
  // For H = z: p and z decay like exp(-t), the conformal rate is 1.
  CHECK(std::abs(last[2] - std::exp(-1.0)) < 1e-8);
  CHECK(std::abs(last[3] - std::exp(-1.0)) < 1e-8);
  CHECK(last[5] == doctest::Approx(1.0));

  std::remove("cli_reeb.json");
  std::remove("cli_reeb.csv");
}

TEST_CASE("evolution variant keeps z constant for the reeb hamiltonian") {
  write_file("cli_evo.json", R"({
    "schema": 1,
    "kind": "hamiltonian",
    "expression": "z",
    "variant": "evolution",
    "initial": [0.0, 1.0, 1.0],
    "t_span": [0.0, 1.0],
    "step": 0.001,
    "csv": "cli_evo.csv"
  })");
  CHECK(run("simulate cli_evo.json") == 0);
  Csv csv = read_csv("cli_evo.csv");
  const auto& last = csv.rows.back();
  CHECK(std::abs(last[3] - 1.0) < 1e-12);
  CHECK(std::abs(last[2] - std::exp(-1.0)) < 1e-8);
  std::remove("cli_evo.json");
  std::remove("cli_evo.csv");
}

TEST_CASE("lagrangian simulation attaches the conserved quantity column") {
  write_file("cli_lag.json", R"({
    "schema": 1,
    "kind": "lagrangian",
    "expression": "qdot^2/2 - q^2/2 - gamma*z",
    "constants": {"gamma": 0.3},
    "initial": [1.0, 0.0, 0.0],
    "t_span": [0.0, 2.0],
    "step": 0.001,
    "monitors": ["conserved_I", "lagrangian"],
    "csv": "cli_lag.csv"
  })");
  CHECK(run("simulate cli_lag.json") == 0);
  Csv csv = read_csv("cli_lag.csv");
  CHECK(csv.header == "t,q,qdot,z,I,L");
  REQUIRE(csv.rows.size() > 100);
  double i0 = csv.rows.front()[4];
  for (const auto& row : csv.rows)
    CHECK(std::abs(row[4] - i0) / (1.0 + std::abs(i0)) < 1e-6);
  std::remove("cli_lag.json");
  std::remove("cli_lag.csv");
}

TEST_CASE("config errors exit with code 1") {
  write_file("cli_bad.json", "{ this is not json");
  CHECK(run("simulate cli_bad.json") == 1);

  write_file("cli_missing.json", R"({"schema": 1, "kind": "hamiltonian"})");
  CHECK(run("simulate cli_missing.json") == 1);

  write_file("cli_expr.json", R"({
    "schema": 1, "kind": "hamiltonian", "expression": "q +",
    "initial": [0, 0, 0], "t_span": [0, 1], "step": 0.01
  })");
  CHECK(run("simulate cli_expr.json") == 1);

  write_file("cli_schema.json", R"({
    "schema": 2, "kind": "hamiltonian", "expression": "z",
    "initial": [0, 0, 0], "t_span": [0, 1], "step": 0.01
  })");
  CHECK(run("simulate cli_schema.json") == 1);

  CHECK(run("simulate /nonexistent/path.json") == 1);
  CHECK(run("verify bogus-suite") == 1);
  CHECK(run("thermo potentials --c -1") == 1);
  CHECK(run("thermo bogus-check") == 1);
  CHECK(run("") == 1);  // a subcommand is required

  std::remove("cli_bad.json");
  std::remove("cli_missing.json");
  std::remove("cli_expr.json");
  std::remove("cli_schema.json");
}

TEST_CASE("finite time blow up exits with code 2 and writes the partial trajectory") {
  write_file("cli_blow.json", R"({
    "schema": 1,
    "kind": "hamiltonian",
    "expression": "q*p^2",
    "initial": [1.0, -1.0, 0.0],
    "t_span": [0.0, 2.0],
    "step": 0.001,
    "csv": "cli_blow.csv"
  })");
  CHECK(run("simulate cli_blow.json") == 2);
  Csv csv = read_csv("cli_blow.csv");
  REQUIRE(!csv.rows.empty());
  CHECK(csv.rows.back()[0] < 2.0);
  for (const auto& row : csv.rows) CHECK(std::isfinite(row[1]));
  std::remove("cli_blow.json");
  std::remove("cli_blow.csv");
}

TEST_CASE("verify reports are byte identical across runs") {
  CHECK(run("verify maps --samples 30 --seed 4 --out cli_v1.json") == 0);
  CHECK(run("verify maps --samples 30 --seed 4 --out cli_v2.json") == 0);
  std::string a = slurp("cli_v1.json"), b = slurp("cli_v2.json");
  CHECK(!a.empty());
  CHECK(a == b);
  CHECK(a.find("\"pass\": true") != std::string::npos);

  // A different seed still passes but samples different points.
  CHECK(run("verify maps --samples 30 --seed 9 --out cli_v3.json") == 0);
  std::string c = slurp("cli_v3.json");
  CHECK(c != a);

  std::remove("cli_v1.json");
  std::remove("cli_v2.json");
  std::remove("cli_v3.json");
}

TEST_CASE("the seed environment variable overrides the flag") {
  CHECK(run("verify maps --samples 20 --seed 4 --out cli_s1.json") == 0);
  CHECK(run_env("CONTACT_MECH_SEED=4", "verify maps --samples 20 --seed 0 --out cli_s2.json") ==
        0);
  CHECK(slurp("cli_s1.json") == slurp("cli_s2.json"));
  std::remove("cli_s1.json");
  std::remove("cli_s2.json");
}

TEST_CASE("zero sample reports are flagged vacuous") {
  CHECK(run("verify maps --samples 0 --out cli_v0.json") == 0);
  std::string text = slurp("cli_v0.json");
  CHECK(text.find("\"vacuous\": true") != std::string::npos);
  std::remove("cli_v0.json");
}

TEST_CASE("thermo flow writes the reference trajectory") {
  CHECK(run("thermo flow --samples 10 --out cli_gf.json --csv cli_gf.csv") == 0);
  Csv csv = read_csv("cli_gf.csv");
  CHECK(csv.header == "t,S,V,N,T,negP,mu,U");
  REQUIRE(!csv.rows.empty());
  const auto& last = csv.rows.back();
  // From (S, V, N) = (1, 1, 1): T and V stay fixed, N = exp(t), S = exp(t)(1 - t).
  CHECK(last[0] == doctest::Approx(1.0));
  CHECK(std::abs(last[1]) < 1e-10);
  CHECK(std::abs(last[2] - 1.0) < 1e-12);
  CHECK(std::abs(last[3] - std::exp(1.0)) < 1e-8);
  std::remove("cli_gf.json");
  std::remove("cli_gf.csv");
}

TEST_CASE("thermo checks pass at non default constants") {
  CHECK(run("thermo potentials --U0 2 --c 1.2 --R 0.8 --samples 40 --out cli_tp.json") == 0);
  CHECK(run("thermo morse --samples 20 --out cli_tm.json") == 0);
  CHECK(run("thermo legendre-chain --samples 20 --out cli_tc.json") == 0);
  std::remove("cli_tp.json");
  std::remove("cli_tm.json");
  std::remove("cli_tc.json");
}
