#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace splitstep::cli {

enum ExitCode : int { kOk = 0, kToleranceFailure = 1, kUsageError = 2 };

/// Entry point shared by the `splitstep` binary and the tests.
/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splitstep::cli
