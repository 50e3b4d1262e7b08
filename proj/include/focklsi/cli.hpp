// cli.hpp — command-line driver: verification suites, constant tables, and
// sweep outputs with deterministic JSON/CSV reports
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace focklsi::cli {

// exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
// configuration error, 3 no failures but truncation-flagged results
inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_inconclusive = 3;

struct RunConfig {
  std::string command;        // alpha | verify | sweep
  std::string target;         // verify suite or sweep kind
  double p = 2.0;
  double beta = 1.0;
  std::vector<int> dims;      // one entry, or two for convergence pairs
  int samples = 25;
  std::uint64_t seed = 1;
  double t_max = 1.0;
  int steps = 20;
  double rate = 0.5;          // rate constant c for the named channel classes
  std::string channel_class = "attenuator";
  int points = 200;           // sweep grid size
  int m = 2;                  // mode count for multimode bound tables
  std::string out_dir;        // --out flag, else FOCKLSI_OUT_DIR, else ./out
  std::string format = "both";  // json | csv | both
};

// Full driver: parses args (no program name), runs the command, writes the
// report and data files, prints a console summary.  Reports are byte-stable
// for identical configuration and seed; wall-clock time goes to the console
// only.
int run(const std::vector<std::string>& args);

}  // namespace focklsi::cli
