#pragma once

#include <ostream>

namespace hmgf {

// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,       // bad flags, unreadable or malformed input
  kExitResource = 2,    // exact solver limits
  kExitNoSolution = 3,  // nothing feasible or returnable
};

// Entry point of the `hmgf` tool with subcommands solve, predict, generate
// and evaluate. Documents go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hmgf
