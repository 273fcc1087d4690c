#include "hijaiyah/time.hpp"

#include <charconv>
#include <cstdio>

#include "hijaiyah/error.hpp"

namespace hijaiyah {

namespace chr = std::chrono;

namespace {

constexpr std::int64_t kMsPerDay = 86'400'000;

[[noreturn]] void bad_timestamp(std::string_view text) {
  throw Error(Errc::schema, "invalid RFC 3339 timestamp: '" + std::string(text) + "'");
}

int read_digits(std::string_view text, std::size_t pos, std::size_t count) {
  if (pos + count > text.size()) bad_timestamp(text);
  int value = 0;
  const auto* first = text.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + count, value);
  if (ec != std::errc() || ptr != first + count) bad_timestamp(text);
  return value;
}

void expect(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) bad_timestamp(text);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Timestamp from_unix_ms(std::int64_t ms) { return Timestamp(chr::milliseconds(ms)); }

std::int64_t to_unix_ms(Timestamp t) { return t.time_since_epoch().count(); }

std::string format_rfc3339(Timestamp t) {
  const auto day = chr::floor<chr::days>(t);
  const chr::year_month_day ymd(day);
  const chr::hh_mm_ss hms(t - day);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()), static_cast<int>(hms.subseconds().count()));
  return buf;
}

Timestamp parse_rfc3339(std::string_view text) {
  const int year = read_digits(text, 0, 4);
  expect(text, 4, '-');
  const int month = read_digits(text, 5, 2);
  expect(text, 7, '-');
  const int mday = read_digits(text, 8, 2);
  if (text.size() < 11 || (text[10] != 'T' && text[10] != 't')) bad_timestamp(text);
  const int hour = read_digits(text, 11, 2);
  expect(text, 13, ':');
  const int minute = read_digits(text, 14, 2);
  expect(text, 16, ':');
  const int second = read_digits(text, 17, 2);

  std::size_t pos = 19;
  std::int64_t millis = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    int digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (digits < 3) millis = millis * 10 + (text[pos] - '0');
      ++digits;
      ++pos;
    }
    if (digits == 0) bad_timestamp(text);
    for (int d = digits; d < 3; ++d) millis *= 10;
  }

  std::int64_t offset_minutes = 0;
  if (pos < text.size() && (text[pos] == 'Z' || text[pos] == 'z')) {
    ++pos;
  } else if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    const int sign = text[pos] == '+' ? 1 : -1;
    const int oh = read_digits(text, pos + 1, 2);
    expect(text, pos + 3, ':');
    const int om = read_digits(text, pos + 4, 2);
    offset_minutes = sign * (oh * 60 + om);
    pos += 6;
  } else {
    bad_timestamp(text);
  }
  if (pos != text.size()) bad_timestamp(text);

  const chr::year_month_day ymd{chr::year(year), chr::month(static_cast<unsigned>(month)),
                                chr::day(static_cast<unsigned>(mday))};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 60) bad_timestamp(text);

  const auto day = chr::sys_days(ymd);
  return chr::time_point_cast<chr::milliseconds>(day) + chr::hours(hour) + chr::minutes(minute) +
         chr::seconds(second) + chr::milliseconds(millis) - chr::minutes(offset_minutes);
}

std::int64_t local_day(Timestamp t, UtcOffset tz) {
  return floor_div(to_unix_ms(t) + std::int64_t{tz.minutes} * 60'000, kMsPerDay);
}

Timestamp local_day_start(Timestamp t, UtcOffset tz) {
  return from_unix_ms(local_day(t, tz) * kMsPerDay - std::int64_t{tz.minutes} * 60'000);
}

Timestamp local_week_start(Timestamp t, UtcOffset tz) {
  const chr::sys_days day{chr::days(local_day(t, tz))};
  const chr::weekday wd(day);
  const auto monday = day - chr::days(wd.iso_encoding() - 1);
  return from_unix_ms(monday.time_since_epoch().count() * kMsPerDay - std::int64_t{tz.minutes} * 60'000);
}

IsoWeek iso_week_of_day(std::int64_t day_number) {
  const chr::sys_days day{chr::days(day_number)};
  const chr::weekday wd(day);
  // The ISO year is the year of the Thursday in the same Monday-based week.
  const auto thursday = day + chr::days(4 - static_cast<int>(wd.iso_encoding()));
  const chr::year_month_day ymd(thursday);
  const chr::sys_days jan1 = chr::year_month_day{ymd.year(), chr::January, chr::day(1)};
  const auto ordinal = (thursday - jan1).count();
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ordinal / 7 + 1)};
}

IsoWeek iso_week(Timestamp t, UtcOffset tz) { return iso_week_of_day(local_day(t, tz)); }

std::string format_iso_week(IsoWeek w) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-W%02u", w.year, w.week);
  return buf;
}

IsoWeek parse_iso_week(std::string_view text) {
  if (text.size() != 8 || text[4] != '-' || text[5] != 'W') {
    throw Error(Errc::schema, "invalid ISO week: '" + std::string(text) + "'");
  }
  IsoWeek w{};
  auto r1 = std::from_chars(text.data(), text.data() + 4, w.year);
  auto r2 = std::from_chars(text.data() + 6, text.data() + 8, w.week);
  if (r1.ec != std::errc() || r2.ec != std::errc() || w.week < 1 || w.week > 53 ||
      iso_week_of_day(iso_week_monday(w)) != w) {
    throw Error(Errc::schema, "invalid ISO week: '" + std::string(text) + "'");
  }
  return w;
}

std::int64_t iso_week_monday(IsoWeek w) {
  // Jan 4 is always in ISO week 1.
  const chr::sys_days jan4 = chr::year_month_day{chr::year(w.year), chr::January, chr::day(4)};
  const chr::weekday wd(jan4);
  const auto week1_monday = jan4 - chr::days(wd.iso_encoding() - 1);
  return (week1_monday + chr::days(7 * (static_cast<int>(w.week) - 1))).time_since_epoch().count();
}

}  // namespace hijaiyah
