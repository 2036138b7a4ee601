#include "dsmeta/date.hpp"

#include <cstdio>

#include "dsmeta/util.hpp"

namespace dsmeta {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) return 0;
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[month - 1];
}

bool CalendarDate::is_valid() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

std::string CalendarDate::to_iso() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

// Howard Hinnant's days-from-civil algorithm.
int64_t CalendarDate::to_days() const {
    int y = year;
    unsigned m = static_cast<unsigned>(month);
    unsigned d = static_cast<unsigned>(day);
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<int64_t>(era) * 146097 + static_cast<int64_t>(doe) - 719468;
}

std::optional<CalendarDate> CalendarDate::from_iso(std::string_view s) {
    s = trim(s);
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto digits = [](std::string_view v) {
        for (char c : v) {
            if (c < '0' || c > '9') return false;
        }
        return true;
    };
    if (!digits(s.substr(0, 4)) || !digits(s.substr(5, 2)) || !digits(s.substr(8, 2))) {
        return std::nullopt;
    }
    CalendarDate date;
    date.year = (s[0] - '0') * 1000 + (s[1] - '0') * 100 + (s[2] - '0') * 10 + (s[3] - '0');
    date.month = (s[5] - '0') * 10 + (s[6] - '0');
    date.day = (s[8] - '0') * 10 + (s[9] - '0');
    if (!date.is_valid()) return std::nullopt;
    return date;
}

}  // namespace dsmeta
