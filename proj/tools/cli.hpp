#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tfloc::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kValidation = 2, kNumerical = 3 };

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tfloc::cli
