#pragma once

// Command-line front end. Kept as a library so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace riesz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitViolation = 4;

inline constexpr const char* kToolVersion = "0.1.0";

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace riesz::cli
