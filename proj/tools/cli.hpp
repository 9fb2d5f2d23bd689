#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ebsw::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kArgumentError = 2, kDataError = 3, kDiverged = 4 };

/// Runs the tool on `args` (without the program name). Machine-readable
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ebsw::cli
