#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace hfgt {

/// Shortest decimal that parses back to the same double; locale independent.
std::string format_number(double value);

/// Fixed number of decimals, locale independent ("%.4f" without printf).
std::string format_fixed(double value, int decimals);

/// Whole-string decimal parse; nullopt on trailing garbage or overflow.
std::optional<double> parse_number(std::string_view text);

}  // namespace hfgt
