#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcsched::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kDataError = 2;
inline constexpr int kInvariantViolation = 3;

// Runs the command line `args` (without the program name). Output goes to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcsched::cli
