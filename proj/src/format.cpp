#include "dalyproj/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace dalyproj {

std::string format_fixed(double value, int places) {
    if (!std::isfinite(value))
        throw std::invalid_argument("format_fixed: non-finite value");
    std::array<char, 400> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::fixed, places);
    if (ec != std::errc{})
        throw std::invalid_argument("format_fixed: value does not fit");
    std::string out(buf.data(), ptr);
    // "-0.00" reads as a sign error in a table
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos)
        out.erase(0, 1);
    return out;
}

double round_half_even(double value, int places) {
    return *parse_double(format_fixed(value, places));
}

std::string format_shortest(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{})
        throw std::invalid_argument("format_shortest: value does not fit");
    return std::string(buf.data(), ptr);
}

std::optional<double> parse_double(std::string_view text) {
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    if (text.empty())
        return std::nullopt;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
        return std::nullopt;
    return value;
}

} // namespace dalyproj
