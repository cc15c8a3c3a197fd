#include "reseq/time.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "reseq/error.hpp"

namespace reseq {
namespace {

int parse_int(std::string_view text, std::size_t pos, std::size_t len, std::string_view whole) {
  int value = 0;
  auto first = text.data() + pos;
  auto last = first + len;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error(Errc::ParseError, "malformed date/time '" + std::string(whole) + "'");
  }
  return value;
}

std::int32_t days_from_fields(int y, int m, int d, std::string_view whole) {
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw Error(Errc::ParseError, "invalid calendar date '" + std::string(whole) + "'");
  return static_cast<std::int32_t>(sys_days{ymd}.time_since_epoch().count());
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    throw Error(Errc::ParseError, "expected YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  return Date{days_from_fields(parse_int(text, 0, 4, text), parse_int(text, 5, 2, text),
                               parse_int(text, 8, 2, text), text)};
}

std::string format_date(Date d) {
  using namespace std::chrono;
  year_month_day ymd{sys_days{days{d.days}}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Timestamp parse_timestamp(std::string_view text) {
  if (!text.empty() && text.back() == 'Z') text.remove_suffix(1);
  if (text.size() != 19 || text[10] != 'T' || text[13] != ':' || text[16] != ':') {
    throw Error(Errc::ParseError, "expected YYYY-MM-DDTHH:MM:SSZ, got '" + std::string(text) + "'");
  }
  Date day = parse_date(text.substr(0, 10));
  int hh = parse_int(text, 11, 2, text);
  int mm = parse_int(text, 14, 2, text);
  int ss = parse_int(text, 17, 2, text);
  if (hh > 23 || mm > 59 || ss > 59) {
    throw Error(Errc::ParseError, "invalid time of day '" + std::string(text) + "'");
  }
  return Timestamp{static_cast<std::int64_t>(day.days) * kSecondsPerDay + hh * 3600 + mm * 60 + ss};
}

std::string format_timestamp(Timestamp t) {
  Date day{static_cast<std::int32_t>(floor_div(t.seconds, kSecondsPerDay))};
  std::int64_t rem = t.seconds - static_cast<std::int64_t>(day.days) * kSecondsPerDay;
  char buf[16];
  std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(rem / 3600),
                static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
  return format_date(day) + buf;
}

Date date_of(Timestamp t, std::int64_t day_start) {
  return Date{static_cast<std::int32_t>(floor_div(t.seconds - day_start, kSecondsPerDay))};
}

}  // namespace reseq
