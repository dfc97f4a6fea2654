#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace nolr {

/// Absolute instant at one-second resolution (UTC seconds since the epoch).
using Timestamp = std::chrono::sys_seconds;

inline constexpr std::int64_t kSecondsPerHour = 3600;
inline constexpr std::int64_t kHoursPerDay = 24;
inline constexpr std::int64_t kHoursPerWeek = 168;

/// Parses an RFC 3339 date-time such as `2020-01-06T09:10:00Z` or
/// `2020-01-06T09:10:00.250-08:00`. Fractional seconds are truncated.
/// Throws std::invalid_argument on malformed input.
Timestamp parse_rfc3339(std::string_view text);

/// Formats as `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_rfc3339(Timestamp t);

inline bool on_hour_boundary(Timestamp t) {
  return t.time_since_epoch().count() % kSecondsPerHour == 0;
}

/// Hour of day (0..23) of `t` in the grid's fixed timezone (UTC).
inline int hour_of_day(Timestamp t) {
  auto s = t.time_since_epoch().count();
  auto h = s / kSecondsPerHour;
  auto r = h % kHoursPerDay;
  return static_cast<int>(r < 0 ? r + kHoursPerDay : r);
}

}  // namespace nolr
