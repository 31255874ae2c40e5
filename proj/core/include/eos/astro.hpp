// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_ASTRO_HPP_
#define EOS_ASTRO_HPP_

#include <memory>
#include <vector>

#include "eos/geo.hpp"
#include "eos/sgp4.hpp"
#include "eos/time.hpp"
#include "eos/tle.hpp"

namespace eos {

struct SatelliteSpec {
  int norad_id = 0;
  double rotation_speed = 1.5;        // deg/s
  double swath = 60.0;                // km
  double max_off_nadir = 30.0;        // deg
  double memory_capacity = 262144.0;  // MB
  double resolution = 2.25;           // m^2 per pixel

  friend bool operator==(const SatelliteSpec&, const SatelliteSpec&) = default;
};

// Throws ValidationError.
void validate(const SatelliteSpec& spec);

struct EphemerisSample {
  Instant time;
  GeodeticPoint subsatellite;  // altitude = satellite height above the ellipsoid
  Vec3 position_eci;           // TEME, km
  Vec3 velocity_eci;           // TEME, km/s
  double ground_speed = 0.0;   // km/s at the subsatellite radius
  Vec3 position_ecef;          // km
  double gmst = 0.0;           // rad, used to rotate Earth-fixed vectors back to ECI
};

// Maximum |t - epoch| accepted by propagate().
inline constexpr double kTleValidityDays = 30.0;

// Holds an initialized SGP4 model for one TLE so that repeated propagation
// skips the element setup. Immutable and thread-safe.
class Propagator {
 public:
  explicit Propagator(TwoLineElement tle, Sgp4Mode mode = Sgp4Mode::kImproved);

  // Throws PropagationError (out of validity window, decayed, diverged).
  EphemerisSample propagate(Instant t) const;
  const TwoLineElement& tle() const { return tle_; }

 private:
  TwoLineElement tle_;
  std::shared_ptr<const Sgp4> model_;
};

EphemerisSample propagate(const TwoLineElement& tle, Instant t);

// Angle at the satellite between the nadir direction (towards the geodetic
// subsatellite point) and the line of sight to target, degrees in [0, 180).
double off_nadir_angle(const EphemerisSample& sample, const GeodeticPoint& target);

// Unit vector from the satellite to target in the ECI (TEME) frame.
Vec3 line_of_sight(const EphemerisSample& sample, const GeodeticPoint& target);

// Solar elevation in degrees, Astronomical Almanac low-precision solar
// coordinates (about 0.01 deg), no refraction.
double sun_elevation(const GeodeticPoint& target, Instant t);

// Subsatellite points sampled every step_s over [start, end].
std::vector<GeodeticPoint> ground_track(const Propagator& propagator, Instant start, Instant end,
                                        double step_s);

}  // namespace eos

#endif  // EOS_ASTRO_HPP_
