#pragma once

#include <chrono>
#include <cstdio>
#include <string>

#include "errors.hpp"

namespace fcdtt {

using Date = std::chrono::year_month_day;

inline Date parse_date(const std::string& iso) {
    int y = 0, m = 0, d = 0;
    char tail = '\0';
    if (std::sscanf(iso.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3)
        throw InputError("malformed date (expected YYYY-MM-DD): '" + iso + "'");
    Date date{std::chrono::year{y}, std::chrono::month{unsigned(m)},
              std::chrono::day{unsigned(d)}};
    if (!date.ok())
        throw InputError("invalid calendar date: '" + iso + "'");
    return date;
}

inline std::string format_date(const Date& date) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(date.year()),
                  unsigned(date.month()), unsigned(date.day()));
    return buf;
}

inline std::chrono::weekday weekday_of(const Date& date) {
    return std::chrono::weekday{std::chrono::sys_days{date}};
}

// Days since the civil epoch; used as a stable ordinal for hashing and ordering.
inline long date_ordinal(const Date& date) {
    return std::chrono::sys_days{date}.time_since_epoch().count();
}

inline Date date_from_ordinal(long ordinal) {
    return Date{std::chrono::sys_days{std::chrono::days{ordinal}}};
}

// "HH:MM" -> seconds since midnight.
inline int parse_time_of_day(const std::string& hhmm) {
    int h = 0, m = 0;
    char tail = '\0';
    // "24:00" is accepted as an exclusive end-of-day bound
    if (std::sscanf(hhmm.c_str(), "%d:%d%c", &h, &m, &tail) != 2 || h < 0 ||
        h > 24 || m < 0 || m > 59 || (h == 24 && m != 0))
        throw InputError("malformed time of day (expected HH:MM): '" + hhmm + "'");
    return h * 3600 + m * 60;
}

} // namespace fcdtt
