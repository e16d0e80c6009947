#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sl3k {

/// Exit codes of the command-line tool.
enum ExitCode { kExitOk = 0, kExitVerificationFailed = 1, kExitUsage = 2 };

/// Runs the tool on argv-style arguments (args[0] is the program name),
/// writing results to out (or the --out file) and diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sl3k
