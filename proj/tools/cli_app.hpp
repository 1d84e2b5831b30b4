#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fefwork::cli {

/// Exit codes: 0 success, 1 property violation (certify), 2 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInput = 2;

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fefwork::cli
