#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace johnkit::cli {

enum ExitCode : int { kPass = 0, kBoundViolation = 1, kError = 2 };

struct ExperimentConfig {
  std::string command;
  std::string input;
  int n = 2;
  int count = 1;
  std::uint64_t seed = 1;
  std::int64_t samples = 100000;
  bool symmetric = false;
  bool inject_extremal = false;
  int images = 10;
  std::string format = "json";
  std::string out;
};

/// Parses argv, runs one subcommand and writes its report to `out` (or to
/// the --out file). Diagnostics go to `err`. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace johnkit::cli
