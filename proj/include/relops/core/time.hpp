#pragma once

#include <cstdint>
#include <string>

namespace relops {

// All simulation timestamps are integer milliseconds since the scenario
// epoch. Integer time keeps event ordering exact; ties are broken by a
// per-simulation sequence number.
using TimeMs = std::int64_t;

inline constexpr TimeMs seconds_ms(double s) { return static_cast<TimeMs>(s * 1000.0 + 0.5); }
inline constexpr TimeMs hours_ms(double h) { return static_cast<TimeMs>(h * 3'600'000.0 + 0.5); }
inline constexpr double ms_to_hours(TimeMs t) { return static_cast<double>(t) / 3'600'000.0; }
inline constexpr double ms_to_seconds(TimeMs t) { return static_cast<double>(t) / 1000.0; }

struct CivilDate {
  int year = 1970;
  unsigned month = 1;  // 1..12
  unsigned day = 1;    // 1..31
};

// Days since 1970-01-01 for a proleptic Gregorian date (Hinnant's algorithm).
inline constexpr std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline constexpr CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return CivilDate{static_cast<int>(y + (m <= 2)), m, d};
}

// Calendar month key ("2025-03") for a sim timestamp relative to an epoch date.
inline std::string month_key(const CivilDate& epoch, TimeMs t) {
  const std::int64_t day = days_from_civil(epoch.year, epoch.month, epoch.day) + t / 86'400'000;
  const CivilDate c = civil_from_days(day);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u", c.year, c.month);
  return buf;
}

}  // namespace relops
