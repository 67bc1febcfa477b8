#pragma once

#include <ostream>

namespace bphz::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsage = 2, kDomain = 3 };

/// Runs the tool on argv, writing to `out` and `err`; returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bphz::cli
