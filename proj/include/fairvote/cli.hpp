#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fairvote::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kCertificationFailure = 2 };

// Runs one command line (without the program name) and writes JSON to out,
// diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairvote::cli
