#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace terndio::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kValidation = 2, kBudget = 3 };

/// Runs one command line. argv[0] is the program name. Results go to `out` (or
/// to --out files), diagnostics and the run manifest to `err` unless
/// --manifest names a file.
int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace terndio::cli
