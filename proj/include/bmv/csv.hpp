#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bmv::csv {

/// 17 significant digits with a '.' decimal point, independent of the locale.
std::string format(double x);

/// Parses a whole trimmed cell as a double; nullopt when it is not a number.
std::optional<double> parse(std::string_view cell);

/// Splits one line on the delimiter; a trailing '\r' is dropped.
std::vector<std::string_view> split(std::string_view line, char delimiter);

std::string_view trim(std::string_view s);

}  // namespace bmv::csv
