#pragma once

// Command-line front end. Every command writes one table (CSV or JSON) whose
// header records the program version and all inputs; output is a pure
// function of the arguments.

#include <iosfwd>
#include <string>
#include <vector>

namespace efimov::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,    // malformed flags or inputs outside an operation's domain
    exit_domain = 3,   // no bound state, subcritical mass ratio, no root anywhere on a scan
};

/// Runs one command. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace efimov::cli
