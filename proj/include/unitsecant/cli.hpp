#pragma once

#include <iosfwd>

namespace unitsecant::cli {

/// Exit codes.
inline constexpr int kExitTangent = 0;
inline constexpr int kExitCorner = 1;
inline constexpr int kExitNoTangent = 2;  // Degenerate or Undetermined
inline constexpr int kExitUsage = 64;

/// Runs the command-line front end; `argv[0]` is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace unitsecant::cli
