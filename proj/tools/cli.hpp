#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinsum::cli {

enum ExitCode { kOk = 0, kViolation = 1, kInputError = 2 };

// args excludes the program name. Results go to out (or --output), and
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinsum::cli
