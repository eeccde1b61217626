#pragma once

#include <iosfwd>

namespace frachjb::cli {

/// Exit codes: 0 all checks pass, 2 a check failed, 1 configuration or
/// runtime error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFailed = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frachjb::cli
