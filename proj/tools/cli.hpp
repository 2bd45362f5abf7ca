#pragma once

#include <iosfwd>

namespace srbench::cli {

// Exit codes beyond the library's error table (srbench::exit_code).
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInternal = 12;
inline constexpr int kExitCheckFailed = 13;

// Entry point shared by the srbench executable and the end-to-end tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace srbench::cli
