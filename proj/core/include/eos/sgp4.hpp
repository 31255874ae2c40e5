// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_SGP4_HPP_
#define EOS_SGP4_HPP_

#include <array>
#include <utility>

#include "eos/geo.hpp"
#include "eos/time.hpp"

namespace eos {

struct Geopotential {
  double ae;  // equatorial radius, km
  double ke;  // sqrt(GM) in earth radii^1.5 / min
  double j2;
  double j3;
  double j4;
};

inline constexpr Geopotential kWgs72{6378.135, 0.07436691613317342, 0.001082616, -0.00000253881,
                                     -0.00000165597};
inline constexpr Geopotential kWgs84{6378.137, 0.07436685316871385, 0.00108262998905,
                                     -0.00000253215306, -0.00000161098761};

// kAfspc reproduces the reference implementation used to generate the public
// verification vectors (WGS-72, AFSPC sidereal time, AFSPC angle wrap). The
// improved mode uses WGS-84 and the IAU sidereal time.
enum class Sgp4Mode { kImproved, kAfspc };

// Mean elements as carried by a TLE. Angles in degrees, mean motion in
// revolutions per day (Kozai).
struct MeanElements {
  Instant epoch;
  double bstar = 0.0;
  double inclination = 0.0;
  double right_ascension = 0.0;
  double eccentricity = 0.0;
  double argument_of_perigee = 0.0;
  double mean_anomaly = 0.0;
  double mean_motion = 0.0;
};

struct TemeState {
  Vec3 position;  // km
  Vec3 velocity;  // km/s
};

// SGP4 with the SDP4 deep-space extension. Immutable after construction;
// propagate() is const and thread-safe.
class Sgp4 {
 public:
  explicit Sgp4(const MeanElements& elements, Sgp4Mode mode = Sgp4Mode::kImproved);

  // Throws PropagationError on eccentricity divergence or a negative
  // semi-latus rectum.
  TemeState propagate(double minutes_since_epoch) const;

  bool deep_space() const { return deep_space_; }
  Sgp4Mode mode() const { return mode_; }

 private:
  struct Orbit {
    double inclination;
    double right_ascension;
    double eccentricity;
    double argument_of_perigee;
    double mean_anomaly;
    double mean_motion;
  };
  struct ThirdBody {
    std::array<double, 12> kx;
    double mean_anomaly_0;
  };
  struct Dots {
    double inclination;
    double right_ascension;
    double eccentricity;
    double argument_of_perigee;
    double mean_anomaly;
  };
  struct Elements {
    Orbit orbit;
    double a;
    double p32, p33, p34, p35, p36;
  };

  static std::pair<ThirdBody, Dots> third_body(double inclination_0, double eccentricity_0,
                                               double argument_of_perigee_0, double n0,
                                               double inclination_sine, double inclination_cosine,
                                               double delta_ra_sine, double delta_ra_cosine,
                                               double eccentricity, double argp_sine,
                                               double argp_cosine, double coefficient,
                                               double mean_motion, double mean_anomaly_0,
                                               double p1, double b0);
  static std::array<double, 5> long_period(const ThirdBody& body, double eccentricity,
                                           double mean_motion, double t);

  Elements near_earth_elements(double t, double p22, double p23) const;
  Elements deep_space_elements(double t, double p22, double p23) const;
  std::pair<double, double> integrate_resonance(double t, double p22, double p23) const;

  Sgp4Mode mode_;
  Geopotential g_;
  Orbit orbit_0_{};
  double ra_dot_ = 0, argp_dot_ = 0, ma_dot_ = 0;
  double c1_ = 0, c4_ = 0, k0_ = 0, k1_ = 0;
  bool deep_space_ = false;

  // near earth
  double a0_ = 0, k2_ = 0, k3_ = 0, k4_ = 0, k5_ = 0, k6_ = 0;
  bool high_altitude_ = false;
  double c5_ = 0, d2_ = 0, d3_ = 0, d4_ = 0, eta_ = 0, k7_ = 0, k8_ = 0, k9_ = 0, k10_ = 0;
  bool elliptic_ = false;
  double k11_ = 0, k12_ = 0, k13_ = 0;

  // deep space
  double ecc_dot_ = 0, inc_dot_ = 0;
  ThirdBody solar_{}, lunar_{};
  enum class Resonance { kNone, kOneDay, kHalfDay } resonance_ = Resonance::kNone;
  double lambda_0_ = 0, lambda_dot_0_ = 0, sidereal_time_0_ = 0;
  double dr1_ = 0, dr2_ = 0, dr3_ = 0;
  std::array<double, 10> dhalf_{};  // d2201 d2211 d3210 d3222 d4410 d4422 d5220 d5232 d5421 d5433
  double k14_ = 0;
};

}  // namespace eos

#endif  // EOS_SGP4_HPP_
