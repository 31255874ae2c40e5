// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/geo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eos/errors.hpp"

namespace eos {
namespace {
constexpr double kE2 = kWgs84F * (2.0 - kWgs84F);
}

void validate(const GeodeticPoint& p) {
  if (!std::isfinite(p.latitude) || p.latitude < -90.0 || p.latitude > 90.0) {
    throw ValidationError("latitude out of range: " + std::to_string(p.latitude));
  }
  if (!std::isfinite(p.longitude) || p.longitude < -180.0 || p.longitude >= 180.0) {
    throw ValidationError("longitude out of range: " + std::to_string(p.longitude));
  }
  if (!std::isfinite(p.altitude) || p.altitude < 0.0) {
    throw ValidationError("altitude must be >= 0: " + std::to_string(p.altitude));
  }
}

double wrap_longitude(double lon_deg) {
  double w = std::fmod(lon_deg + 180.0, 360.0);
  if (w < 0.0) w += 360.0;
  w -= 180.0;
  return w >= 180.0 ? -180.0 : w;
}

Vec3 geodetic_to_ecef(const GeodeticPoint& p) {
  const double lat = p.latitude * kDegToRad;
  const double lon = p.longitude * kDegToRad;
  const double s = std::sin(lat);
  const double n = kWgs84A / std::sqrt(1.0 - kE2 * s * s);
  const double c = std::cos(lat);
  return {(n + p.altitude) * c * std::cos(lon), (n + p.altitude) * c * std::sin(lon),
          (n * (1.0 - kE2) + p.altitude) * s};
}

GeodeticPoint ecef_to_geodetic(const Vec3& r) {
  const double rho = std::hypot(r.x, r.y);
  const double lon = std::atan2(r.y, r.x);
  // Fixed-point iteration on latitude; converges to sub-millimetre in a few
  // steps for LEO radii.
  double lat = std::atan2(r.z, rho * (1.0 - kE2));
  double n = kWgs84A;
  double h = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double s = std::sin(lat);
    n = kWgs84A / std::sqrt(1.0 - kE2 * s * s);
    const double c = std::cos(lat);
    h = std::abs(c) > 1e-10 ? rho / c - n : std::abs(r.z) - n * (1.0 - kE2);
    const double next = std::atan2(r.z, rho * (1.0 - kE2 * n / (n + h)));
    if (std::abs(next - lat) < 1e-14) {
      lat = next;
      break;
    }
    lat = next;
  }
  return {lat * kRadToDeg, wrap_longitude(lon * kRadToDeg), h};
}

Vec3 teme_to_ecef(const Vec3& r, double gmst) {
  const double c = std::cos(gmst);
  const double s = std::sin(gmst);
  return {c * r.x + s * r.y, -s * r.x + c * r.y, r.z};
}

Vec3 ecef_to_teme(const Vec3& r, double gmst) {
  const double c = std::cos(gmst);
  const double s = std::sin(gmst);
  return {c * r.x - s * r.y, s * r.x + c * r.y, r.z};
}

double great_circle_distance_km(const GeodeticPoint& a, const GeodeticPoint& b) {
  const double p1 = a.latitude * kDegToRad;
  const double p2 = b.latitude * kDegToRad;
  const double dp = p2 - p1;
  const double dl = (b.longitude - a.longitude) * kDegToRad;
  const double h = std::sin(dp / 2) * std::sin(dp / 2) +
                   std::cos(p1) * std::cos(p2) * std::sin(dl / 2) * std::sin(dl / 2);
  return 2.0 * kMeanEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

GeodeticPoint destination_point(const GeodeticPoint& origin, double bearing_deg,
                                double distance_km) {
  const double d = distance_km / kMeanEarthRadiusKm;
  const double b = bearing_deg * kDegToRad;
  const double p1 = origin.latitude * kDegToRad;
  const double l1 = origin.longitude * kDegToRad;
  const double p2 = std::asin(std::sin(p1) * std::cos(d) + std::cos(p1) * std::sin(d) * std::cos(b));
  const double l2 = l1 + std::atan2(std::sin(b) * std::sin(d) * std::cos(p1),
                                    std::cos(d) - std::sin(p1) * std::sin(p2));
  return {p2 * kRadToDeg, wrap_longitude(l2 * kRadToDeg), origin.altitude};
}

}  // namespace eos
