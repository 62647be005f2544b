#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bmv::cli {

inline constexpr int kSuccess = 0;
inline constexpr int kInternalError = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericalError = 3;

/// Runs one command line (without the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bmv::cli
