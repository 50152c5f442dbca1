#pragma once

#include <string>
#include <string_view>

namespace lrpt {

/// Shortest text with 17 significant digits; parses back to the same double.
std::string format_real(double value);

/// Throws std::invalid_argument if `text` is not entirely a number.
double parse_real(std::string_view text);

}  // namespace lrpt
