// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eos/errors.hpp"
#include "eos/geo.hpp"
#include "eos/time.hpp"

namespace eos {
namespace {

TEST(Time, Iso8601RoundTrip) {
  const Instant t = make_instant(2024, 10, 17, 9, 40, 0);
  EXPECT_EQ(format_iso8601(t), "2024-10-17T09:40:00Z");
  EXPECT_EQ(parse_iso8601("2024-10-17T09:40:00Z"), t);
  EXPECT_EQ(parse_iso8601("2024-10-17 09:40"), t);
  const Instant frac = make_instant(2024, 1, 2, 3, 4, 5.25);
  EXPECT_EQ(format_iso8601(frac), "2024-01-02T03:04:05.250000Z");
  EXPECT_EQ(parse_iso8601(format_iso8601(frac)), frac);
}

TEST(Time, ParseRejectsGarbage) {
  EXPECT_THROW(parse_iso8601("yesterday"), ParseError);
  EXPECT_THROW(parse_iso8601("2024-13-01T00:00"), ParseError);
  EXPECT_THROW(parse_iso8601("2024-10-17T25:00"), ParseError);
}

TEST(Time, SecondsArithmetic) {
  const Instant a = make_instant(2024, 2, 28, 23, 59, 30);
  const Instant b = add_seconds(a, 45.5);
  EXPECT_DOUBLE_EQ(seconds_between(a, b), 45.5);
  EXPECT_EQ(format_iso8601(b), "2024-02-29T00:00:15.500000Z");
}

TEST(Time, JulianDateOfJ2000) {
  const Instant j2000 = make_instant(2000, 1, 1, 12);
  EXPECT_DOUBLE_EQ(julian_date(j2000), 2451545.0);
  EXPECT_DOUBLE_EQ(days_since_j2000(j2000), 0.0);
  EXPECT_NEAR(days_since_j2000(make_instant(2024, 10, 17)), 9055.5, 1e-9);
}

TEST(Time, GmstKnownValue) {
  // 2000-01-01 12:00 UT1: GMST = 280.46061837 deg.
  EXPECT_NEAR(gmst_radians(make_instant(2000, 1, 1, 12)) * kRadToDeg, 280.46061837, 1e-6);
  const double g = gmst_radians(make_instant(2024, 10, 17, 9, 40));
  EXPECT_GE(g, 0.0);
  EXPECT_LT(g, kTwoPi);
}

TEST(Geo, EcefRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lat(-89.9, 89.9), lon(-180.0, 179.999), alt(0.0, 1000.0);
  for (int i = 0; i < 1000; ++i) {
    const GeodeticPoint p{lat(rng), lon(rng), alt(rng)};
    const GeodeticPoint q = ecef_to_geodetic(geodetic_to_ecef(p));
    EXPECT_NEAR(q.latitude, p.latitude, 1e-9);
    EXPECT_NEAR(q.longitude, p.longitude, 1e-9);
    EXPECT_NEAR(q.altitude, p.altitude, 1e-6);
  }
}

TEST(Geo, EquatorAndPole) {
  const Vec3 e = geodetic_to_ecef({0.0, 0.0, 0.0});
  EXPECT_NEAR(e.x, kWgs84A, 1e-9);
  const Vec3 n = geodetic_to_ecef({90.0, 0.0, 0.0});
  EXPECT_NEAR(n.z, kWgs84A * (1.0 - kWgs84F), 1e-6);
}

TEST(Geo, GreatCircle) {
  // A quarter of the meridian on the mean sphere.
  EXPECT_NEAR(great_circle_distance_km({0, 0, 0}, {90, 0, 0}), kPi * kMeanEarthRadiusKm / 2.0, 1e-9);
  EXPECT_NEAR(great_circle_distance_km({10, 20, 0}, {10, 20, 0}), 0.0, 1e-12);
  const GeodeticPoint d = destination_point({45.0, 10.0, 0.0}, 90.0, 100.0);
  EXPECT_NEAR(great_circle_distance_km({45.0, 10.0, 0.0}, d), 100.0, 1e-9);
}

TEST(Geo, WrapLongitude) {
  EXPECT_DOUBLE_EQ(wrap_longitude(180.0), -180.0);
  EXPECT_DOUBLE_EQ(wrap_longitude(190.0), -170.0);
  EXPECT_DOUBLE_EQ(wrap_longitude(-190.0), 170.0);
  EXPECT_DOUBLE_EQ(wrap_longitude(0.0), 0.0);
}

TEST(Geo, ValidateRanges) {
  EXPECT_NO_THROW(validate(GeodeticPoint{90.0, -180.0, 0.0}));
  EXPECT_THROW(validate(GeodeticPoint{91.0, 0.0, 0.0}), ValidationError);
  EXPECT_THROW(validate(GeodeticPoint{0.0, 180.0, 0.0}), ValidationError);
  EXPECT_THROW(validate(GeodeticPoint{0.0, 0.0, -1.0}), ValidationError);
}

TEST(Geo, TemeEcefInverse) {
  const Vec3 r{7000.0, -1200.0, 300.0};
  const Vec3 back = ecef_to_teme(teme_to_ecef(r, 1.234), 1.234);
  EXPECT_NEAR(norm(back - r), 0.0, 1e-9);
}

}  // namespace
}  // namespace eos
