#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace primecert::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailed = 1;  // FAIL, UNKNOWN, NO_CERTIFICATE, report mismatch
inline constexpr int kExitUsage = 2;   // bad flags, numbers, files or parameter constraints

// Arguments exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primecert::cli
