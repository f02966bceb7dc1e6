#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slipkit::cli {

/// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCharacterization = 2;
inline constexpr int kExitInsufficientExcitation = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;

/// Runs the command-line pipeline (characterize | preset | sample | simulate |
/// train | eval | converge) against the given arguments, as the slipkit
/// binary would. Exposed as a library call so tests can drive the exact CLI
/// surface in-process.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Convenience overload writing to std::cout / std::cerr.
int run(const std::vector<std::string>& args);

}  // namespace slipkit::cli
