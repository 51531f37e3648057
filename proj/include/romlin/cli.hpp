#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace romlin::cli {

// Exit codes: 0 success, 2 usage error, 3 I/O or input-data error,
// 4 mandatory output came up empty.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitEmpty = 4;

// Runs the full command line (excluding the program name) against the
// given streams. Never throws; failures map onto the exit codes above
// with diagnostics on err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace romlin::cli
