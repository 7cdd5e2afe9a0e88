#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ratho::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

/// Runs one ratho invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Names of all subcommands, in help order.
const std::vector<std::string>& command_names();

}  // namespace ratho::cli
