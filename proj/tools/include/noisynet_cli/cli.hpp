#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace noisynet::cli {

enum ExitCode : int { kSuccess = 0, kComputationError = 1, kUsageError = 2 };

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noisynet::cli
