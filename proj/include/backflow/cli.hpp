#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace backflow::cli {

enum ExitCode : int { kPass = 0, kUsage = 1, kVerificationFailed = 2 };

/// Parses "pi", "-pi", "0.5pi", "2*pi" or a plain number. Throws std::invalid_argument.
[[nodiscard]] double parse_angle(const std::string& text);

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace backflow::cli
