#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace reseq {

struct Duration {
  std::int64_t seconds = 0;
  auto operator<=>(const Duration&) const = default;
};

// Seconds since the Unix epoch, UTC.
struct Timestamp {
  std::int64_t seconds = 0;

  auto operator<=>(const Timestamp&) const = default;

  Timestamp operator+(Duration d) const { return {seconds + d.seconds}; }
  Timestamp operator-(Duration d) const { return {seconds - d.seconds}; }
  Duration operator-(Timestamp other) const { return {seconds - other.seconds}; }
};

// Days since the Unix epoch.
struct Date {
  std::int32_t days = 0;
  auto operator<=>(const Date&) const = default;
};

inline constexpr std::int64_t kSecondsPerDay = 86400;

// Floor division; window arithmetic must also work before the window origin.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Parses `YYYY-MM-DD`. Throws Error(ParseError) on malformed or impossible dates.
Date parse_date(std::string_view text);
std::string format_date(Date d);

/// Parses `YYYY-MM-DDTHH:MM:SSZ` (the trailing `Z` is optional).
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

/// Calendar date containing `t`, with days starting `day_start` seconds after midnight UTC.
Date date_of(Timestamp t, std::int64_t day_start = 0);

}  // namespace reseq
