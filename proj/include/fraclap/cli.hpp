// The fraclap command line: bounds, table, gap, spectrum, verify.
#pragma once

#include <iosfwd>

namespace fraclap::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumeric = 3 };

/// Option values resolve as flags, then FRACLAP_<OPTION> environment
/// variables, then the --config file (global keys or a [subcommand] section).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fraclap::cli
