#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace frares::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kSuccess = 0,
  kToleranceFailure = 1,
  kUsageError = 2,
  kIoError = 3,
};

/// Runs one CLI invocation. `args[0]` is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frares::cli
