#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hartree::cli {

enum ExitCode : int { ok = 0, usage_error = 1, not_converged = 2 };

/// Runs the command line tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hartree::cli
