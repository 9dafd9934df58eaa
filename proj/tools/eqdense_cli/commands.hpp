#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace eqdense::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;

/// Runs `eqdense <args...>` (args excludes the program name). CSV goes to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a:b" or "a" as an inclusive integer range.
std::pair<int, int> parse_int_range(const std::string& text);

/// Comma-separated reals.
std::vector<double> parse_list(const std::string& text);

}  // namespace eqdense::cli
