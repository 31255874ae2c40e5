// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_TIME_HPP_
#define EOS_TIME_HPP_

#include <chrono>
#include <string>
#include <string_view>

namespace eos {

// UTC instant with microsecond resolution. Leap seconds are ignored, which is
// the usual convention for TLE epochs.
using Instant = std::chrono::sys_time<std::chrono::microseconds>;

Instant make_instant(int year, int month, int day, int hour = 0, int minute = 0,
                     double second = 0.0);

// b - a in seconds.
double seconds_between(Instant a, Instant b);
Instant add_seconds(Instant t, double seconds);

// "2024-10-17T09:40:00Z"; fractional seconds are printed only when non-zero.
std::string format_iso8601(Instant t);
// Accepts "YYYY-MM-DDTHH:MM[:SS[.ffffff]]" with optional trailing 'Z' and a
// space in place of 'T'. Throws ParseError.
Instant parse_iso8601(std::string_view text);

double julian_date(Instant t);
// Days since J2000.0 (2000-01-01 12:00 UTC), computed without going through the
// full Julian date to keep precision.
double days_since_j2000(Instant t);
// Greenwich mean sidereal time (IAU-82), radians in [0, 2pi).
double gmst_radians(Instant t);

}  // namespace eos

#endif  // EOS_TIME_HPP_
