#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace p4c {

// Exit codes shared by the CLI and its tests.
enum ExitCode {
    EXIT_OK = 0,
    EXIT_INTERNAL = 1,
    EXIT_NOT_IN_CLASS = 2,
    EXIT_DISCONNECTED = 3,
    EXIT_PARSE = 4,
    EXIT_BUDGET = 5,
    EXIT_USAGE = 6,
};

// Run the command-line interface on argv-style arguments (without argv[0]).
// All normal output goes to out, diagnostics to err.  Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace p4c
