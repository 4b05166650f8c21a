#pragma once

// Minimal CSV reading for the flat panel and gender files.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace dalyproj::csv {

struct Row {
    std::size_t line = 0; // 1-based physical line in the stream
    std::vector<std::string> fields;
};

// Splits one line on commas. Double-quoted fields may contain commas and
// doubled quotes. Surrounding whitespace of unquoted fields is trimmed.
std::vector<std::string> split(std::string_view line);

// Reads all non-blank lines. Strips a UTF-8 BOM and trailing CR.
std::vector<Row> read_rows(std::istream& in);

std::string lower(std::string_view text);

} // namespace dalyproj::csv
