#pragma once

#include <ostream>

namespace dualhop::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfig = 2,
  kExitNonConvergence = 3,
};

/// Entry point behind the `dualhop` executable. Results go to `out` (or to
/// --out), diagnostics to `err`. Never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dualhop::cli
