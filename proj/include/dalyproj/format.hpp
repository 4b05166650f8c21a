#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace dalyproj {

// Fixed-point decimal text for value, rounded half-to-even on the exact binary
// value. Always uses '.' and no grouping, regardless of locale.
std::string format_fixed(double value, int places);

// The double nearest to format_fixed(value, places).
double round_half_even(double value, int places);

// Shortest text that parses back to exactly value.
std::string format_shortest(double value);

// Locale-independent strict parse; the whole field must be consumed.
std::optional<double> parse_double(std::string_view text);

} // namespace dalyproj
