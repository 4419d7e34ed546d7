#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctseq {

inline constexpr const char* kVersion = "0.1.0";

/// Stable exit-code contract for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInapplicable = 2;
inline constexpr int kExitMalformed = 3;
inline constexpr int kExitBudget = 4;

/// Runs one CLI invocation (args excludes the program name). Records go to
/// `out`, diagnostics to `err`; the return value follows the exit-code
/// contract above.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace ctseq
