#pragma once

#include <ostream>
#include <span>
#include <string>

namespace fpsir::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kConfig = 3,
  kIo = 4,
  kSolver = 5,
  kInternal = 70,
};

/// Entry point shared by the executable and the tests.  `args` excludes the
/// program name.  Errors are reported as a single `error: ...` line on err.
int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err);

/// Cheap invariant battery behind `fpsir check`.  Prints one line per check
/// and returns the number of failures.
int run_self_checks(std::ostream& out);

}  // namespace fpsir::cli
