#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace clogfuse::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kSuccess = 0, kConfigError = 2, kRuntimeError = 3 };

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace clogfuse::cli
