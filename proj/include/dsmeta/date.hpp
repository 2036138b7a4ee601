#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dsmeta {

// Plain proleptic-Gregorian calendar date.
struct CalendarDate {
    int year = 0;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const CalendarDate&) const = default;

    bool is_valid() const;
    std::string to_iso() const;  // YYYY-MM-DD

    // Days since 1970-01-01 (may be negative).
    int64_t to_days() const;

    static std::optional<CalendarDate> from_iso(std::string_view s);
};

int days_in_month(int year, int month);
bool is_leap_year(int year);

}  // namespace dsmeta
