#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace hijaiyah {

/// Millisecond-resolution UTC instant. All wire timestamps are RFC 3339 UTC.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

Timestamp from_unix_ms(std::int64_t ms);
std::int64_t to_unix_ms(Timestamp t);

/// Formats as `YYYY-MM-DDTHH:MM:SS.mmmZ`.
std::string format_rfc3339(Timestamp t);

/// Accepts `YYYY-MM-DDTHH:MM:SS[.fraction](Z|±HH:MM)`; throws Error{schema}.
Timestamp parse_rfc3339(std::string_view text);

/// Fixed UTC offset used for calendar-day and week boundaries.
struct UtcOffset {
  int minutes = 0;
};

/// Local calendar day containing `t`, as days since 1970-01-01.
std::int64_t local_day(Timestamp t, UtcOffset tz);

/// Start (UTC instant) of the local day containing `t`.
Timestamp local_day_start(Timestamp t, UtcOffset tz);

/// Start (UTC instant) of the Monday-based local week containing `t`.
Timestamp local_week_start(Timestamp t, UtcOffset tz);

struct IsoWeek {
  int year = 0;
  unsigned week = 0;
  auto operator<=>(const IsoWeek&) const = default;
};

IsoWeek iso_week_of_day(std::int64_t day);
IsoWeek iso_week(Timestamp t, UtcOffset tz);
std::string format_iso_week(IsoWeek w);  // "2026-W07"
IsoWeek parse_iso_week(std::string_view text);
/// Local day number (days since epoch) of the Monday starting `w`.
std::int64_t iso_week_monday(IsoWeek w);

}  // namespace hijaiyah
