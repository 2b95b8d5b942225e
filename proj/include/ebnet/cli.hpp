#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ebnet::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kIoError = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics and usage to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ebnet::cli
