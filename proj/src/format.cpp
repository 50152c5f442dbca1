#include "lrpt/format.hpp"

#include <charconv>
#include <stdexcept>

namespace lrpt {

std::string format_real(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

double parse_real(std::string_view text) {
    double out = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return out;
}

}  // namespace lrpt
