#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bacforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

/// Runs the batch front end. `args` excludes the program name. Warnings go
/// to `err` and never change the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bacforge
