#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jarlskog::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 1,
    kIdentityViolation = 2,
};

/// Runs the command line (arguments without the program name) and returns
/// the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jarlskog::cli
