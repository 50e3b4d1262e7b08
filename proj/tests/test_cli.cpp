// test_cli.cpp — driver behavior: report files, determinism, configuration
// precedence, exit codes
#include <fcntl.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "focklsi/cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using focklsi::cli::run;
using nlohmann::json;

namespace {

// the driver prints through stdio; keep test output readable
int run_quiet(const std::vector<std::string>& args) {
  std::fflush(stdout);
  std::fflush(stderr);
  int out = dup(1), err = dup(2);
  int devnull = open("/dev/null", O_WRONLY);
  dup2(devnull, 1);
  dup2(devnull, 2);
  close(devnull);
  int rc = run(args);
  std::fflush(stdout);
  std::fflush(stderr);
  dup2(out, 1);
  dup2(err, 2);
  close(out);
  close(err);
  return rc;
}

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / "focklsi_cli_tests" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json report(const fs::path& dir) { return json::parse(slurp(dir / "report.json")); }

std::vector<std::vector<double>> csv_rows(const fs::path& p) {
  std::ifstream f(p);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::getline(f, line);  // header
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("alpha table reproduces the frozen anchors") {
  fs::path d = fresh_dir("alpha");
  CHECK(run_quiet({"alpha", "--out", d.string()}) == 0);
  auto rows = csv_rows(d / "alpha.csv");
  CHECK(rows.size() == 12);
  bool saw21 = false, saw11 = false;
  for (const auto& r : rows) {
    if (r[0] == 2.0 && r[1] == 1.0) {
      saw21 = true;
      CHECK(r[2] == doctest::Approx(0.25525193041276156).epsilon(1e-15));
      CHECK(r[4] == doctest::Approx(0.092214046454195731).epsilon(1e-15));
    }
    if (r[0] == 1.0 && r[1] == 1.0) {
      saw11 = true;
      CHECK(r[2] == doctest::Approx(0.26054765274687369).epsilon(1e-15));
    }
  }
  CHECK(saw21);
  CHECK(saw11);
  json rep = report(d);
  CHECK(rep["exit_code"] == 0);
  CHECK(rep["summary"]["passed"] == 1);
  CHECK(rep["files"][0] == "alpha.csv");
}

TEST_CASE("verify reports every check with its configuration") {
  fs::path d = fresh_dir("verify_gen");
  CHECK(run_quiet({"verify", "generators", "--seed", "3", "--samples", "5",
                   "--out", d.string()}) == 0);
  json rep = report(d);
  CHECK(rep["schema_version"] == "1");
  CHECK(rep["checks"].size() > 0);
  for (const auto& c : rep["checks"]) CHECK(c["status"] == "pass");
  CHECK(rep["config"]["command"] == "verify");
  CHECK(rep["config"]["target"] == "generators");
  CHECK(rep["config"]["seed"] == 3);
  CHECK(rep["config"]["samples"] == 5);
}

TEST_CASE("reports are byte-identical across reruns") {
  fs::path d1 = fresh_dir("rerun_a"), d2 = fresh_dir("rerun_b");
  CHECK(run_quiet({"verify", "meta", "--seed", "7", "--samples", "6", "--out",
                   d1.string()}) == 0);
  CHECK(run_quiet({"verify", "meta", "--seed", "7", "--samples", "6", "--out",
                   d2.string()}) == 0);
  std::string a = slurp(d1 / "report.json"), b = slurp(d2 / "report.json");
  CHECK(!a.empty());
  CHECK(a == b);
}

TEST_CASE("flags override configuration files which override defaults") {
  fs::path d = fresh_dir("config");
  fs::path cfgfile = d / "run.cfg";
  {
    std::ofstream f(cfgfile);
    f << "# sample configuration\n";
    f << "p = 1.5\n";
    f << "seed = 9\n";
    f << "samples = 4\n";
  }
  CHECK(run_quiet({"verify", "meta", "--config", cfgfile.string(), "--seed",
                   "11", "--out", d.string()}) == 0);
  json rep = report(d);
  CHECK(rep["config"]["p"] == 1.5);      // from the file
  CHECK(rep["config"]["seed"] == 11);    // flag wins
  CHECK(rep["config"]["samples"] == 4);  // from the file
  CHECK(rep["config"]["beta"] == 1.0);   // untouched default
}

TEST_CASE("usage errors exit with the usage code") {
  fs::path d = fresh_dir("usage");
  CHECK(run_quiet({"verify", "nonsense", "--out", d.string()}) == 2);
  CHECK(run_quiet({"alpha", "--no-such-flag"}) == 2);
  CHECK(run_quiet({}) == 2);
  fs::path bad = d / "bad.cfg";
  {
    std::ofstream f(bad);
    f << "bogus = 1\n";
  }
  CHECK(run_quiet({"verify", "meta", "--config", bad.string()}) == 2);
}

TEST_CASE("sweeps write finite tables") {
  fs::path d = fresh_dir("sweeps");
  CHECK(run_quiet({"sweep", "thermal-ratio", "--points", "40", "--out",
                   d.string()}) == 0);
  auto rows = csv_rows(d / "thermal_ratio.csv");
  CHECK(rows.size() == 40);
  for (const auto& r : rows)
    for (double v : r) CHECK(std::isfinite(v));
  CHECK(run_quiet({"sweep", "phi", "--points", "30", "--out", d.string()}) ==
        0);
  auto phi_rows = csv_rows(d / "phi.csv");
  CHECK(phi_rows.size() == 900);
  for (const auto& r : phi_rows) CHECK(r[2] >= -1e-12);
}

TEST_CASE("csv format suppresses the json report") {
  fs::path d = fresh_dir("csvonly");
  CHECK(run_quiet({"alpha", "--format", "csv", "--out", d.string()}) == 0);
  CHECK(fs::exists(d / "alpha.csv"));
  CHECK(!fs::exists(d / "report.json"));
}

TEST_CASE("a flagged trajectory exits with the inconclusive code") {
  fs::path d = fresh_dir("amp");
  CHECK(run_quiet({"sweep", "trajectory", "--class", "amplifier", "--t-max",
                   "5", "--out", d.string()}) == 3);
  json rep = report(d);
  CHECK(rep["exit_code"] == 3);
  CHECK(rep["checks"][0]["status"] == "flagged");
}

TEST_CASE("the environment variable supplies the output directory") {
  fs::path d = fresh_dir("envdir");
  setenv("FOCKLSI_OUT_DIR", d.string().c_str(), 1);
  int rc = run_quiet({"alpha"});
  unsetenv("FOCKLSI_OUT_DIR");
  CHECK(rc == 0);
  CHECK(fs::exists(d / "report.json"));
}

}  // TEST_SUITE
