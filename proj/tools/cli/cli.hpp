#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tatecalc::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2 };

/// Runs one command. `args` excludes the program name. Data goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tatecalc::cli
