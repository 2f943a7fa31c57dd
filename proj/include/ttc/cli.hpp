#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ttc::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kCheckFailure = 1,
    kInputError = 2,
    kNumericalError = 3,
};

/// Runs the `ttc` command line; args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ttc::cli
