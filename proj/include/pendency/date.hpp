#pragma once

#include <charconv>
#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace pendency {

/// Calendar day in UTC.
using Date = std::chrono::sys_days;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD).
inline std::optional<Date> parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int value = 0;
        const char* first = text.data() + pos;
        const char* last = first + len;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            return std::nullopt;
        }
        return value;
    };
    const auto y = field(0, 4);
    const auto m = field(5, 2);
    const auto d = field(8, 2);
    if (!y || !m || !d || *m < 1 || *d < 1) {
        return std::nullopt;
    }
    const std::chrono::year_month_day ymd{std::chrono::year{*y},
                                          std::chrono::month{static_cast<unsigned>(*m)},
                                          std::chrono::day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    return Date{ymd};
}

inline std::string format_iso_date(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

/// Integer days since 1970-01-01.
inline long days_since_epoch(Date date) { return date.time_since_epoch().count(); }

inline Date date_from_days(long days) { return Date{std::chrono::days{days}}; }

}  // namespace pendency
