#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace affres::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,     // invariance failed, not certified, or verification mismatch
  kUsage = 2,
  kResourceLimit = 3,
  kNotCertifiable = 4,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affres::cli
