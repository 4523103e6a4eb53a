#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jck::cli {

enum ExitCode : int {
  kOk = 0,
  kRejected = 1,  // the input was read but fails the check asked for
  kInputError = 2,
};

/// Runs one `jck` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jck::cli
