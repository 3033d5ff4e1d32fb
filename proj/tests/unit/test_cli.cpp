// Copyright 2026 The wolffsys Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end runs of the wolffsys executable on the bundled configs.

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = fs::path(WSYS_TEST_SCRATCH) / "cli";

int run(const std::string& args) {
  const std::string cmd = std::string(WSYS_CLI_PATH) + " " + args + " >" + (kScratch / "stdout.txt").string() +
                          " 2>" + (kScratch / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config(const std::string& name) { return (fs::path(WSYS_CONFIG_DIR) / name).string(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

struct Scratch {
  Scratch() {
    fs::remove_all(kScratch);
    fs::create_directories(kScratch);
  }
};

}  // namespace

TEST_CASE("cli: wolff on a dirac follows 2 r^{-1/2}") {
  Scratch s;
  const fs::path out = kScratch / "wolff";
  REQUIRE(run("wolff --config " + config("dirac_wolff.cfg") + " --out " + out.string()) == 0);
  const auto rows = csv(out / "wolff.csv");
  REQUIRE(rows.size() == 42);
  CHECK(rows[0] == std::vector<std::string>{"r", "value", "is_infinite"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double r = std::stod(rows[i][0]);
    CHECK(std::stod(rows[i][1]) == doctest::Approx(2.0 / std::sqrt(r)).epsilon(1e-13));
    CHECK(rows[i][2] == "0");
  }
  const std::string report = slurp(out / "wolff_report.txt");
  CHECK(report.find("# config_hash=fnv1a64:") != std::string::npos);
  CHECK(report.find("# param.system.k=2") != std::string::npos);
}

TEST_CASE("cli: identical config and seed give byte-identical tables") {
  Scratch s;
  REQUIRE(run("wolff --seed 7 --config " + config("dirac_wolff.cfg") + " --out " + (kScratch / "a").string()) == 0);
  REQUIRE(run("wolff --seed 7 --config " + config("dirac_wolff.cfg") + " --out " + (kScratch / "b").string()) == 0);
  CHECK(slurp(kScratch / "a" / "wolff.csv") == slurp(kScratch / "b" / "wolff.csv"));
  CHECK(slurp(kScratch / "a" / "wolff_report.txt").find("# seed=7") != std::string::npos);
}

TEST_CASE("cli: dirac weight is refused without the override") {
  Scratch s;
  CHECK(run("solve --config " + config("dirac_solve.cfg") + " --out " + (kScratch / "d").string()) == 1);
  CHECK(slurp(kScratch / "stderr.txt").find("capacity") != std::string::npos);
  CHECK_FALSE(fs::exists(kScratch / "d" / "solve.csv"));
}

TEST_CASE("cli: config errors name the key and exit 1") {
  Scratch s;
  const fs::path cfg = kScratch / "bad.cfg";
  std::ofstream(cfg) << "system.n = 5\nsystem.k = 2\nsystem.bogus = 1\n";
  CHECK(run("wolff --config " + cfg.string() + " --out " + kScratch.string()) == 1);
  CHECK(slurp(kScratch / "stderr.txt").find("system.bogus") != std::string::npos);

  std::ofstream(cfg) << "system.n = 5\nsystem.k = two\nmeasure.sigma.kind = dirac\n";
  CHECK(run("wolff --config " + cfg.string() + " --out " + kScratch.string()) == 1);
  CHECK(slurp(kScratch / "stderr.txt").find("system.k") != std::string::npos);

  std::ofstream(cfg) << "system.n = 4\nsystem.k = 2\nmeasure.sigma.kind = dirac\n";
  CHECK(run("wolff --config " + cfg.string() + " --out " + kScratch.string()) == 1);
}

TEST_CASE("cli: dirichlet, lemma A and preset") {
  Scratch s;
  const fs::path out = kScratch / "dir";
  REQUIRE(run("dirichlet --config " + config("dirichlet_dirac.cfg") + " --out " + out.string()) == 0);
  const auto rows = csv(out / "dirichlet.csv");
  CHECK(rows[0] == std::vector<std::string>{"r", "u", "du", "source_mass"});
  CHECK(std::stod(rows.back()[1]) == 0.0);
  REQUIRE(run("verify lemA --config " + config("dirichlet_dirac.cfg") + " --out " + out.string()) == 0);
  CHECK(slurp(out / "verify_lemA_report.txt").find("pass=1") != std::string::npos);
  REQUIRE(run("preset counterexample --config " + config("counterexample.cfg") + " --out " + out.string()) == 0);
  CHECK(slurp(out / "preset_counterexample_report.txt").find("s=3.5") != std::string::npos);
}

TEST_CASE("cli: solve on the bundled bump config") {
  Scratch s;
  const fs::path out = kScratch / "bump";
  REQUIRE(run("solve --config " + config("bump_solve.cfg") + " --out " + out.string()) == 0);
  const auto rows = csv(out / "solve.csv");
  REQUIRE(rows.size() == 201);
  CHECK(rows[0] == std::vector<std::string>{"r", "u", "v", "U_envelope", "V_envelope", "u0", "v0"});
  const std::string report = slurp(out / "solve_report.txt");
  CHECK(report.find("termination=converged") != std::string::npos);
  CHECK(report.find("monotonicity_violations=0") != std::string::npos);
  CHECK(fs::exists(out / "residuals.csv"));
}
