// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/time.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "eos/errors.hpp"
#include "eos/geo.hpp"

namespace eos {
namespace {

using std::chrono::microseconds;

constexpr double kMicrosPerDay = 86400e6;
// 2000-01-01T12:00:00Z in microseconds since the Unix epoch.
constexpr std::int64_t kJ2000Micros = 946728000LL * 1000000LL;

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError("invalid timestamp: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Instant make_instant(int year, int month, int day, int hour, int minute, double second) {
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                           std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) throw ValidationError("invalid calendar date");
  const auto base = time_point_cast<microseconds>(sys_days{ymd}) + hours{hour} + minutes{minute};
  return base + microseconds{std::llround(second * 1e6)};
}

double seconds_between(Instant a, Instant b) {
  return static_cast<double>((b - a).count()) * 1e-6;
}

Instant add_seconds(Instant t, double seconds) {
  return t + microseconds{std::llround(seconds * 1e6)};
}

std::string format_iso8601(Instant t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  auto rem = t - day;
  const auto h = duration_cast<hours>(rem);
  rem -= h;
  const auto m = duration_cast<minutes>(rem);
  rem -= m;
  const auto s = duration_cast<seconds>(rem);
  rem -= s;
  char buf[48];
  if (rem.count() == 0) {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(h.count()), static_cast<int>(m.count()),
                  static_cast<int>(s.count()));
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%06dZ",
                  static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()), static_cast<int>(h.count()),
                  static_cast<int>(m.count()), static_cast<int>(s.count()),
                  static_cast<int>(rem.count()));
  }
  return buf;
}

Instant parse_iso8601(std::string_view text) {
  std::string_view s = text;
  if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.remove_suffix(1);
  if (s.size() < 16 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') ||
      s[13] != ':') {
    throw ParseError("invalid timestamp: '" + std::string(text) + "'");
  }
  const int year = parse_int(s.substr(0, 4), text);
  const int month = parse_int(s.substr(5, 2), text);
  const int day = parse_int(s.substr(8, 2), text);
  const int hour = parse_int(s.substr(11, 2), text);
  const int minute = parse_int(s.substr(14, 2), text);
  int second = 0;
  std::int64_t micros = 0;
  if (s.size() > 16) {
    if (s[16] != ':' || s.size() < 19) throw ParseError("invalid timestamp: '" + std::string(text) + "'");
    second = parse_int(s.substr(17, 2), text);
    if (s.size() > 19) {
      if (s[19] != '.' || s.size() == 20 || s.size() > 26) {
        throw ParseError("invalid timestamp: '" + std::string(text) + "'");
      }
      std::string frac(s.substr(20));
      frac.resize(6, '0');
      micros = parse_int(frac, text);
    }
  }
  if (hour > 23 || minute > 59 || second > 59) {
    throw ParseError("invalid timestamp: '" + std::string(text) + "'");
  }
  try {
    return make_instant(year, month, day, hour, minute, second) + microseconds{micros};
  } catch (const ValidationError&) {
    throw ParseError("invalid timestamp: '" + std::string(text) + "'");
  }
}

double days_since_j2000(Instant t) {
  const std::int64_t us = t.time_since_epoch().count() - kJ2000Micros;
  // Split to keep sub-microsecond precision in the fraction.
  const std::int64_t whole = us / 86400000000LL;
  const std::int64_t rest = us % 86400000000LL;
  return static_cast<double>(whole) + static_cast<double>(rest) / kMicrosPerDay;
}

double julian_date(Instant t) { return 2451545.0 + days_since_j2000(t); }

double gmst_radians(Instant t) {
  const double tut1 = days_since_j2000(t) / 36525.0;
  double theta = -6.2e-6 * tut1 * tut1 * tut1 + 0.093104 * tut1 * tut1 +
                 (876600.0 * 3600.0 + 8640184.812866) * tut1 + 67310.54841;
  theta = std::fmod(theta * kDegToRad / 240.0, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  return theta;
}

}  // namespace eos
