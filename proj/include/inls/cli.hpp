#pragma once

#include <iosfwd>

namespace inls {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitHypothesis = 2,
  kExitQuadrature = 3,
  kExitNumeric = 4,
};

/// Entry point of the `inls` tool: check, pairs, ground-state, simulate,
/// virial-report. Output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace inls
