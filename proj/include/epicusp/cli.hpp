#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epicusp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysisError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerifyFailed = 3;

/// Runs one subcommand. `args` excludes the program name. Results go to `out`
/// as JSON (or JSON lines / CSV when requested); diagnostics and usage text go
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epicusp::cli
