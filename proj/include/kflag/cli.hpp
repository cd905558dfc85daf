#pragma once

#include <ostream>

namespace kflag {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitComputation = 2, kExitVerification = 3 };

/// Runs the kflag command line. Normal output goes to `out` (or the -o
/// file), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kflag
