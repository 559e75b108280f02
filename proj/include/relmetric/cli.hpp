#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relmetric::cli {

// Exit codes of the command-line tool.
inline constexpr int kOk = 0;             // value printed, no violation, increasing, table agrees
inline constexpr int kNegative = 1;       // violation found, decreasing somewhere, table disagrees
inline constexpr int kUsageError = 2;     // unparseable or out-of-range input
inline constexpr int kDomainError = 3;    // point outside G, vanishing weight, failed evaluation

/// Runs the tool in-process. Reports go to `out` (or the --out file), diagnostics
/// to `err`. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// Arguments without the program name.

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relmetric::cli
