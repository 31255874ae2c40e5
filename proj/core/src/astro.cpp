// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/astro.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eos/errors.hpp"

namespace eos {

void validate(const SatelliteSpec& spec) {
  auto positive = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw ValidationError(std::string("satellite ") + name + " must be > 0");
    }
  };
  if (spec.norad_id <= 0) throw ValidationError("satellite norad_id must be > 0");
  positive(spec.rotation_speed, "rotation_speed");
  positive(spec.swath, "swath");
  positive(spec.max_off_nadir, "max_off_nadir");
  positive(spec.memory_capacity, "memory_capacity");
  positive(spec.resolution, "resolution");
  if (spec.max_off_nadir > 90.0) throw ValidationError("satellite max_off_nadir must be <= 90");
}

Propagator::Propagator(TwoLineElement tle, Sgp4Mode mode)
    : tle_(std::move(tle)), model_(std::make_shared<const Sgp4>(tle_.elements, mode)) {}

EphemerisSample Propagator::propagate(Instant t) const {
  const double dt_s = seconds_between(tle_.epoch, t);
  if (std::abs(dt_s) > kTleValidityDays * 86400.0) {
    throw PropagationError(PropagationError::Kind::kOutOfValidity,
                           "time " + format_iso8601(t) + " is more than 30 days from TLE epoch " +
                               format_iso8601(tle_.epoch) + " of catalog " +
                               std::to_string(tle_.norad_id));
  }
  const TemeState state = model_->propagate(dt_s / 60.0);
  if (!std::isfinite(state.position.x) || !std::isfinite(state.velocity.x)) {
    throw PropagationError(PropagationError::Kind::kDiverged, "non-finite SGP4 state");
  }
  EphemerisSample s;
  s.time = t;
  s.position_eci = state.position;
  s.velocity_eci = state.velocity;
  s.gmst = gmst_radians(t);
  s.position_ecef = teme_to_ecef(state.position, s.gmst);
  s.subsatellite = ecef_to_geodetic(s.position_ecef);
  if (s.subsatellite.altitude < 0.0) {
    throw PropagationError(PropagationError::Kind::kDecayed,
                           "catalog " + std::to_string(tle_.norad_id) + " below the surface at " +
                               format_iso8601(t));
  }
  const Vec3 r_hat = normalized(state.position);
  const Vec3 v_h = state.velocity - dot(state.velocity, r_hat) * r_hat;
  const GeodeticPoint foot{s.subsatellite.latitude, s.subsatellite.longitude, 0.0};
  const double r_sub = norm(geodetic_to_ecef(foot));
  s.ground_speed = norm(v_h) * r_sub / norm(state.position);
  return s;
}

EphemerisSample propagate(const TwoLineElement& tle, Instant t) {
  return Propagator(tle).propagate(t);
}

double off_nadir_angle(const EphemerisSample& sample, const GeodeticPoint& target) {
  const GeodeticPoint foot{sample.subsatellite.latitude, sample.subsatellite.longitude, 0.0};
  const Vec3 nadir = geodetic_to_ecef(foot) - sample.position_ecef;
  const Vec3 los = geodetic_to_ecef(target) - sample.position_ecef;
  return angle_between(nadir, los) * kRadToDeg;
}

Vec3 line_of_sight(const EphemerisSample& sample, const GeodeticPoint& target) {
  const Vec3 los = geodetic_to_ecef(target) - sample.position_ecef;
  return normalized(ecef_to_teme(normalized(los), sample.gmst));
}

double sun_elevation(const GeodeticPoint& target, Instant t) {
  const double n = days_since_j2000(t);
  const double mean_lon = std::fmod(280.460 + 0.9856474 * n, 360.0);
  const double g = std::fmod(357.528 + 0.9856003 * n, 360.0) * kDegToRad;
  const double lambda = (mean_lon + 1.915 * std::sin(g) + 0.020 * std::sin(2.0 * g)) * kDegToRad;
  const double eps = (23.439 - 0.0000004 * n) * kDegToRad;
  const double ra = std::atan2(std::cos(eps) * std::sin(lambda), std::cos(lambda));
  const double dec = std::asin(std::sin(eps) * std::sin(lambda));
  const double gmst_deg = std::fmod(280.46061837 + 360.98564736629 * n, 360.0);
  const double hour_angle = (gmst_deg + target.longitude) * kDegToRad - ra;
  const double lat = target.latitude * kDegToRad;
  const double s = std::sin(lat) * std::sin(dec) + std::cos(lat) * std::cos(dec) * std::cos(hour_angle);
  return std::asin(std::clamp(s, -1.0, 1.0)) * kRadToDeg;
}

std::vector<GeodeticPoint> ground_track(const Propagator& propagator, Instant start, Instant end,
                                        double step_s) {
  if (!(step_s > 0.0)) throw ValidationError("ground track step must be > 0");
  std::vector<GeodeticPoint> out;
  const double total = seconds_between(start, end);
  const auto steps = static_cast<long long>(std::floor(total / step_s + 1e-9));
  for (long long k = 0; k <= steps; ++k) {
    const auto s = propagator.propagate(add_seconds(start, static_cast<double>(k) * step_s));
    out.push_back({s.subsatellite.latitude, s.subsatellite.longitude, 0.0});
  }
  return out;
}

}  // namespace eos
