#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dsmeta {

std::string to_lower_ascii(std::string_view s);

// Simple Unicode case fold: ASCII plus the Latin-1 Supplement and
// Latin Extended-A ranges. Other code points pass through unchanged.
std::string case_fold(std::string_view s);

std::string_view trim(std::string_view s);

// Collapses runs of whitespace (space, tab, CR, LF, FF, VT) to single spaces
// and trims the ends.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

// Splits on runs of ASCII whitespace; no empty tokens.
std::vector<std::string> split_whitespace(std::string_view s);

bool iequals(std::string_view a, std::string_view b);

std::optional<long long> parse_int(std::string_view s);

// Fixed-precision decimal formatting, locale-independent ("%.4f" style).
std::string format_double(double v, int precision);

}  // namespace dsmeta
