#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rainbow::cli {

/// Exit codes shared by every subcommand.
enum Exit : int { ok = 0, property_failed = 1, usage = 2, budget = 3 };

/// Runs one command line (args excludes the program name) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

} // namespace rainbow::cli
