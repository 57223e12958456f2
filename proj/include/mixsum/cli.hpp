#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitExceptions = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// Runs one command line (without the program name). Structured output goes to `out`,
/// progress and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mixsum::cli
