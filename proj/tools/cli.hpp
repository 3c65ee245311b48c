#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace entropart::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kDegenerate = 3,
  kInequalityFailed = 4,
};

/// Runs one invocation (`args[0]` is the program name) writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err);

}  // namespace entropart::cli
