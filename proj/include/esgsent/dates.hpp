#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace esg {

using Date = std::chrono::year_month_day;
using Timestamp = std::chrono::sys_seconds;

/// Parses `YYYY-MM-DD`. Throws SchemaError.
Date parse_date(std::string_view text);
std::string format_date(Date date);

/// Parses an RFC 3339 timestamp (`2022-07-20T10:15:00Z`, optional fractional
/// seconds, `Z` or `+HH:MM`/`-HH:MM` offset) and normalizes it to UTC.
/// Fractional seconds are truncated. Throws SchemaError.
Timestamp parse_timestamp(std::string_view text);

/// Formats as `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_timestamp(Timestamp ts);

inline Date utc_date(Timestamp ts) {
    return Date{std::chrono::floor<std::chrono::days>(ts)};
}

/// Closed calendar-date interval in UTC.
struct TimeWindow {
    Date start;
    Date end;

    /// Throws InvariantError when start > end or a date is invalid.
    static TimeWindow make(Date start, Date end);
    /// Parses `START:END` (both `YYYY-MM-DD`).
    static TimeWindow parse(std::string_view text);
    /// `days` calendar days ending on (and including) `end`.
    static TimeWindow ending_on(Date end, int days);

    [[nodiscard]] bool contains(Date d) const { return start <= d && d <= end; }
    [[nodiscard]] bool contains(Timestamp ts) const { return contains(utc_date(ts)); }

    friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

}  // namespace esg
