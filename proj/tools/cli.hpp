#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lcss::cli {

enum ExitCode { ok = 0, mismatch = 1, input_error = 2 };

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcss::cli
