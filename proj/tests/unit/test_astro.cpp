// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "eos/astro.hpp"
#include "eos/errors.hpp"
#include "support/fixtures.hpp"

namespace eos {
namespace {

// Equation of time in minutes from the NOAA fractional-year series.
double equation_of_time_min(Instant t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const int doy = static_cast<int>((day - sys_days{ymd.year() / January / 1}).count()) + 1;
  const double hours = seconds_between(Instant{day}, t) / 3600.0;
  const double g = 2.0 * kPi / (ymd.year().is_leap() ? 366.0 : 365.0) * (doy - 1 + (hours - 12.0) / 24.0);
  return 229.18 * (0.000075 + 0.001868 * std::cos(g) - 0.032077 * std::sin(g) - 0.014615 * std::cos(2 * g) -
                   0.040849 * std::sin(2 * g));
}

Instant spot_epoch() { return eos::testing::spot_tles()[0].epoch; }

TEST(Astro, PropagateIsDeterministic) {
  const auto tle = eos::testing::spot_tles()[0];
  const EphemerisSample a = propagate(tle, tle.epoch);
  const EphemerisSample b = propagate(tle, tle.epoch);
  EXPECT_EQ(a.position_eci, b.position_eci);
  EXPECT_EQ(a.velocity_eci, b.velocity_eci);
  EXPECT_EQ(a.subsatellite, b.subsatellite);
  EXPECT_EQ(a.ground_speed, b.ground_speed);
}

TEST(Astro, SunSynchronousAltitudeBand) {
  for (const auto& tle : eos::testing::spot_tles()) {
    const Propagator prop(tle);
    for (int k = 0; k < 200; ++k) {
      const EphemerisSample s = prop.propagate(add_seconds(tle.epoch, 37.0 * k * 60.0));
      EXPECT_GE(s.subsatellite.altitude, 650.0);
      EXPECT_LE(s.subsatellite.altitude, 750.0);
      EXPECT_GT(s.ground_speed, 6.0);
      EXPECT_LT(s.ground_speed, 7.5);
    }
  }
}

TEST(Astro, ValidityWindow) {
  const auto tle = eos::testing::spot_tles()[0];
  EXPECT_NO_THROW(propagate(tle, add_seconds(tle.epoch, 29.9 * 86400.0)));
  EXPECT_NO_THROW(propagate(tle, add_seconds(tle.epoch, -29.9 * 86400.0)));
  try {
    propagate(tle, add_seconds(tle.epoch, 31.0 * 86400.0));
    FAIL();
  } catch (const PropagationError& e) {
    EXPECT_EQ(e.kind(), PropagationError::Kind::kOutOfValidity);
  }
}

TEST(Astro, OffNadirAtSubsatellitePoint) {
  const auto tle = eos::testing::spot_tles()[1];
  for (int k = 0; k < 50; ++k) {
    const EphemerisSample s = propagate(tle, add_seconds(tle.epoch, 600.0 * k));
    GeodeticPoint foot = s.subsatellite;
    foot.altitude = 0.0;
    EXPECT_NEAR(off_nadir_angle(s, foot), 0.0, 1e-6);
  }
}

TEST(Astro, OffNadirFlatEarthSmallAngle) {
  const auto tle = eos::testing::spot_tles()[0];
  const EphemerisSample s = propagate(tle, add_seconds(tle.epoch, 1234.0));
  const GeodeticPoint foot{s.subsatellite.latitude, s.subsatellite.longitude, 0.0};
  for (double bearing : {0.0, 90.0, 200.0}) {
    for (double d : {1.0, 10.0, 25.0, 50.0}) {
      const GeodeticPoint target = destination_point(foot, bearing, d);
      const double flat = std::atan(d / s.subsatellite.altitude) * kRadToDeg;
      EXPECT_NEAR(off_nadir_angle(s, target), flat, 0.5) << d;
    }
  }
}

// The antipode lies on the nadir line through the Earth's centre; any point on
// the surface is seen within the limb half-angle asin(R / (R + h)) < 90 deg.
TEST(Astro, OffNadirFarSide) {
  const auto tle = eos::testing::spot_tles()[0];
  const EphemerisSample s = propagate(tle, tle.epoch);
  const GeodeticPoint anti{-s.subsatellite.latitude, wrap_longitude(s.subsatellite.longitude + 180.0), 0.0};
  EXPECT_LT(off_nadir_angle(s, anti), 0.5);
  const double limb = std::asin(kWgs84A / (kWgs84A + s.subsatellite.altitude)) * kRadToDeg;
  std::mt19937_64 rng(8);
  for (int k = 0; k < 2000; ++k) {
    const GeodeticPoint p{eos::testing::uniform(rng, -90, 90), eos::testing::uniform(rng, -180, 179.99), 0.0};
    const double th = off_nadir_angle(s, p);
    EXPECT_GE(th, 0.0);
    EXPECT_LT(th, limb + 0.2);
  }
}

TEST(Astro, OffNadirContinuity) {
  std::mt19937_64 rng(11);
  const auto tle = eos::testing::spot_tles()[0];
  for (int k = 0; k < 500; ++k) {
    const EphemerisSample s = propagate(tle, add_seconds(tle.epoch, eos::testing::uniform(rng, 0, 86400)));
    const GeodeticPoint foot{s.subsatellite.latitude, s.subsatellite.longitude, 0.0};
    const GeodeticPoint target =
        destination_point(foot, eos::testing::uniform(rng, 0, 360), eos::testing::uniform(rng, 0, 2000));
    const GeodeticPoint moved = destination_point(target, eos::testing::uniform(rng, 0, 360), 1.0);
    EXPECT_LT(std::abs(off_nadir_angle(s, target) - off_nadir_angle(s, moved)), 1.0);
  }
}

TEST(Astro, LineOfSightAtNadir) {
  const auto tle = eos::testing::spot_tles()[1];
  const EphemerisSample s = propagate(tle, add_seconds(tle.epoch, 4321.0));
  const GeodeticPoint foot{s.subsatellite.latitude, s.subsatellite.longitude, 0.0};
  const Vec3 los = line_of_sight(s, foot);
  EXPECT_NEAR(norm(los), 1.0, 1e-12);
  EXPECT_LT(angle_between(los, -1.0 * s.position_eci) * kRadToDeg, 0.2);
}

TEST(Astro, LineOfSightCoplanarTargets) {
  const auto tle = eos::testing::spot_tles()[0];
  const EphemerisSample s = propagate(tle, add_seconds(tle.epoch, 999.0));
  const GeodeticPoint foot{s.subsatellite.latitude, s.subsatellite.longitude, 0.0};
  for (auto [d1, d2] : {std::pair{50.0, 200.0}, {0.0, 300.0}, {120.0, 400.0}}) {
    const GeodeticPoint a = destination_point(foot, 80.0, d1);
    const GeodeticPoint b = destination_point(foot, 80.0, d2);
    const double between = angle_between(line_of_sight(s, a), line_of_sight(s, b)) * kRadToDeg;
    EXPECT_NEAR(between, std::abs(off_nadir_angle(s, a) - off_nadir_angle(s, b)), 0.5);
    EXPECT_NEAR(norm(line_of_sight(s, b)), 1.0, 1e-12);
  }
}

TEST(Astro, SunAtEquinoxNoon) {
  const GeodeticPoint p{0.0, 0.0, 0.0};
  const Instant noon_clock = make_instant(2024, 3, 20, 12);
  // Local solar noon differs from 12:00 UTC by the equation of time.
  const Instant solar_noon = add_seconds(noon_clock, -equation_of_time_min(noon_clock) * 60.0);
  EXPECT_NEAR(sun_elevation(p, solar_noon), 90.0, 1.0);
  EXPECT_LT(sun_elevation(p, add_seconds(solar_noon, 12 * 3600.0)), 0.0);
}

TEST(Astro, SunDecreasesTowardSunset) {
  const GeodeticPoint p{0.0, 0.0, 0.0};
  const Instant noon = make_instant(2024, 3, 20, 12, 7);
  double prev = sun_elevation(p, noon);
  for (int h = 1; h <= 6; ++h) {
    const double e = sun_elevation(p, add_seconds(noon, h * 3600.0));
    EXPECT_LT(e, prev);
    prev = e;
  }
}

TEST(Astro, SunMatchesReferenceTable) {
  std::istringstream in(eos::testing::read_text(eos::testing::source_dir() / "tests/data/sun_reference.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string utc, lat, lon, elev;
    std::getline(ss, utc, ',');
    std::getline(ss, lat, ',');
    std::getline(ss, lon, ',');
    std::getline(ss, elev, ',');
    const GeodeticPoint p{std::stod(lat), std::stod(lon), 0.0};
    EXPECT_NEAR(sun_elevation(p, parse_iso8601(utc)), std::stod(elev), 0.5) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 60);
}

TEST(Astro, SunElevationRange) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10000; ++k) {
    const GeodeticPoint p{eos::testing::uniform(rng, -90, 90), eos::testing::uniform(rng, -180, 179.99), 0.0};
    const Instant t = add_seconds(make_instant(2020, 1, 1), eos::testing::uniform(rng, 0, 8 * 365 * 86400.0));
    const double e = sun_elevation(p, t);
    EXPECT_GE(e, -90.0);
    EXPECT_LE(e, 90.0);
  }
}

TEST(Astro, GroundTrack) {
  const Propagator prop(eos::testing::spot_tles()[0]);
  const Instant t0 = spot_epoch();
  const auto track = ground_track(prop, t0, add_seconds(t0, 3600.0), 60.0);
  ASSERT_EQ(track.size(), 61u);
  for (const auto& p : track) EXPECT_NO_THROW(validate(GeodeticPoint{p.latitude, p.longitude, 0.0}));
}

TEST(Astro, SpecValidation) {
  SatelliteSpec s;
  s.norad_id = 1;
  EXPECT_NO_THROW(validate(s));
  s.max_off_nadir = 91.0;
  EXPECT_THROW(validate(s), ValidationError);
  s.max_off_nadir = 30.0;
  s.rotation_speed = 0.0;
  EXPECT_THROW(validate(s), ValidationError);
  s.rotation_speed = 1.5;
  s.resolution = -1.0;
  EXPECT_THROW(validate(s), ValidationError);
}

}  // namespace
}  // namespace eos
