#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace otto {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitIo = 3 };

/// Runs the command line `args` (without the program name). Data goes to
/// `out` when no output path is configured; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace otto
