#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace star {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;
inline constexpr int kExitReplayMismatch = 3;

// Entry point for `star serve|match|tournament|replay verify|rate`. args
// excludes the program name. Diagnostics go to `err`, summaries to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace star
