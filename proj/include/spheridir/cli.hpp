// Command-line front end. Commands read JSON descriptors, run one module's
// verification and write a versioned report.
//
// Exit codes: 0 pass, 1 verification failure, 2 input error.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace spheridir {

struct RunConfig {
  std::string command;
  std::string input;  // path, "-" for stdin, empty for the command's default
  std::optional<int> d;
  std::optional<int> N;
  std::optional<int> k;
  std::optional<int> m;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1000000;
  std::string format = "json";
  std::string out;  // empty for stdout
  bool invariant_kernel = false;
  bool extract = false;
  std::string radius = "1/2";
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

/// Runs a validated configuration, writing the report to `out` and
/// diagnostics to `err`.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and runs the selected command.
int run_cli(int argc, char** argv);

}  // namespace spheridir
