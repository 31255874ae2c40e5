// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_GEO_HPP_
#define EOS_GEO_HPP_

#include <cmath>

namespace eos {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kDegToRad = kPi / 180.0;
inline constexpr double kRadToDeg = 180.0 / kPi;

// WGS-84
inline constexpr double kWgs84A = 6378.137;
inline constexpr double kWgs84F = 1.0 / 298.257223563;
inline constexpr double kMeanEarthRadiusKm = 6371.0;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3 operator*(const Vec3& a, double s) { return s * a; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return (1.0 / norm(a)) * a; }

// Angle between two vectors in radians, robust near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

struct GeodeticPoint {
  double latitude = 0.0;   // degrees [-90, 90]
  double longitude = 0.0;  // degrees [-180, 180)
  double altitude = 0.0;   // km

  friend bool operator==(const GeodeticPoint&, const GeodeticPoint&) = default;
};

// Throws ValidationError when a field is out of range or non-finite.
void validate(const GeodeticPoint& p);

// Wraps any finite longitude into [-180, 180).
double wrap_longitude(double lon_deg);

Vec3 geodetic_to_ecef(const GeodeticPoint& p);
GeodeticPoint ecef_to_geodetic(const Vec3& r);

// Rotation about z by the sidereal angle, TEME <-> Earth-fixed (polar motion
// neglected).
Vec3 teme_to_ecef(const Vec3& r, double gmst);
Vec3 ecef_to_teme(const Vec3& r, double gmst);

// Spherical great-circle distance on the mean Earth radius.
double great_circle_distance_km(const GeodeticPoint& a, const GeodeticPoint& b);
// Point at a given distance and initial bearing (degrees from north).
GeodeticPoint destination_point(const GeodeticPoint& origin, double bearing_deg,
                                double distance_km);

}  // namespace eos

#endif  // EOS_GEO_HPP_
