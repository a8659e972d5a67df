#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace numlaw::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_input = 2;
inline constexpr int exit_usage = 64;

/// Runs one command line (without the program name) and returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace numlaw::cli
