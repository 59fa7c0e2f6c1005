#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace afembed::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kVerificationFailed = 2,
  kNotFinite = 3,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace afembed::cli
