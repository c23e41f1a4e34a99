#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zerogap {

inline constexpr const char* tool_version = "0.1.0";

// Exit codes shared by every command.
enum ExitCode : int { exit_ok = 0, exit_fails = 1, exit_invalid = 2, exit_internal = 3 };

// Runs one command line (args excludes the program name) and returns the
// exit code. Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zerogap
