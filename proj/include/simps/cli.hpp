#pragma once

#include <ostream>

namespace simps {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitConversion = 3,
  kExitUnsupported = 4,
  kExitInternal = 5,
};

/// Runs `simps_cli` with the given arguments, writing the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace simps
