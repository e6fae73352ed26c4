#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mbl {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Entry point of `mblab`. CSV goes to `out` (or the --output file),
// diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a,b,c" or "start:stop:step" (inclusive, step > 0).
std::vector<double> parse_grid(const std::string& text);

}  // namespace mbl
