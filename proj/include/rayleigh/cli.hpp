#pragma once

#include <iosfwd>

namespace rayleigh::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;   ///< solver-level failure (SE, roots, no converged root, ...)
inline constexpr int kExitInput = 2;     ///< unreadable / malformed input or bad flags

/// Entry point of the `rayleigh` tool; writes results to `out` and diagnostics
/// to `err`. Subcommands: check, roots, scan, solve, case.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rayleigh::cli
