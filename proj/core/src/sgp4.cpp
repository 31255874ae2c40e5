// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0
//
// SGP4/SDP4 after Hoots & Roehrich (Spacetrack report #3) with the Vallado
// et al. 2006 corrections. Variable naming follows the sgp4 Rust crate, whose
// structure this port mirrors.

#include "eos/sgp4.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eos/errors.hpp"

namespace eos {
namespace {

constexpr double kSiderealSpeed = 4.37526908801129966e-3;
constexpr double kSolarEccentricity = 0.01675;
constexpr double kLunarEccentricity = 0.05490;
constexpr double kSolarMeanMotion = 1.19459e-5;
constexpr double kLunarMeanMotion = 1.5835218e-4;
constexpr double kSolarCoefficient = 2.9864797e-6;
constexpr double kLunarCoefficient = 4.7968065e-7;
constexpr double kDeltaT = 720.0;
constexpr double kLambda31 = 0.13130908;
constexpr double kLambda22 = 2.8843198;
constexpr double kLambda33 = 0.37448087;
constexpr double kG22 = 5.7686396;
constexpr double kG32 = 0.95240898;
constexpr double kG44 = 1.8014998;
constexpr double kG52 = 1.0508330;
constexpr double kG54 = 4.4108898;

inline double sq(double x) { return x * x; }
inline double cube(double x) { return x * x * x; }

double rem_euclid(double x, double m) {
  double r = std::fmod(x, m);
  if (r < 0.0) r += m;
  return r;
}

double iau_sidereal_time(double epoch_years) {
  const double c2000 = epoch_years / 100.0;
  const double theta = (-6.2e-6 * cube(c2000) + 0.093104 * sq(c2000) +
                        (876600.0 * 3600.0 + 8640184.812866) * c2000 + 67310.54841) *
                       (kPi / 180.0) / 240.0;
  return rem_euclid(theta, kTwoPi);
}

double afspc_sidereal_time(double epoch_years) {
  const double d1970 = (epoch_years + 30.0) * 365.25 + 1.0;
  const double theta = 1.7321343856509374 + 1.72027916940703639e-2 * std::floor(d1970 + 1.0e-8) +
                       (1.72027916940703639e-2 + kTwoPi) * (d1970 - std::floor(d1970 + 1.0e-8)) +
                       sq(d1970) * 5.07551419432269442e-15;
  return rem_euclid(theta, kTwoPi);
}

}  // namespace

std::pair<Sgp4::ThirdBody, Sgp4::Dots> Sgp4::third_body(
    double inclination_0, double eccentricity_0, double argument_of_perigee_0, double n0,
    double inclination_sine, double inclination_cosine, double delta_ra_sine,
    double delta_ra_cosine, double eccentricity, double argp_sine, double argp_cosine,
    double coefficient, double mean_motion, double mean_anomaly_0, double p1, double b0) {
  const double ax1 = argp_cosine * delta_ra_cosine + argp_sine * inclination_cosine * delta_ra_sine;
  const double ax3 = -argp_sine * delta_ra_cosine + argp_cosine * inclination_cosine * delta_ra_sine;
  const double ax7 = -argp_cosine * delta_ra_sine + argp_sine * inclination_cosine * delta_ra_cosine;
  const double ax8 = argp_sine * inclination_sine;
  const double ax9 = argp_sine * delta_ra_sine + argp_cosine * inclination_cosine * delta_ra_cosine;
  const double ax10 = argp_cosine * inclination_sine;
  const double ci = std::cos(inclination_0);
  const double si = std::sin(inclination_0);
  const double ax2 = ci * ax7 + si * ax8;
  const double ax4 = ci * ax9 + si * ax10;
  const double ax5 = -si * ax7 + ci * ax8;
  const double ax6 = -si * ax9 + ci * ax10;
  const double cw = std::cos(argument_of_perigee_0);
  const double sw = std::sin(argument_of_perigee_0);
  const double xx1 = ax1 * cw + ax2 * sw;
  const double xx2 = ax3 * cw + ax4 * sw;
  const double xx3 = -ax1 * sw + ax2 * cw;
  const double xx4 = -ax3 * sw + ax4 * cw;
  const double xx5 = ax5 * sw;
  const double xx6 = ax6 * sw;
  const double xx7 = ax5 * cw;
  const double xx8 = ax6 * cw;
  const double e2 = sq(eccentricity_0);
  const double zx31 = 12.0 * sq(xx1) - 3.0 * sq(xx3);
  const double zx32 = 24.0 * xx1 * xx2 - 6.0 * xx3 * xx4;
  const double zx33 = 12.0 * sq(xx2) - 3.0 * sq(xx4);
  const double zx11 = -6.0 * ax1 * ax5 + e2 * (-24.0 * xx1 * xx7 - 6.0 * xx3 * xx5);
  const double zx13 = -6.0 * ax3 * ax6 + e2 * (-24.0 * xx2 * xx8 - 6.0 * xx4 * xx6);
  const double zx21 = 6.0 * ax2 * ax5 + e2 * (24.0 * xx1 * xx5 - 6.0 * xx3 * xx7);
  const double zx23 = 6.0 * ax4 * ax6 + e2 * (24.0 * xx2 * xx6 - 6.0 * xx4 * xx8);
  const double zx1 = (3.0 * (sq(ax1) + sq(ax2)) + zx31 * e2) * 2.0 + p1 * zx31;
  const double zx3 = (3.0 * (sq(ax3) + sq(ax4)) + zx33 * e2) * 2.0 + p1 * zx33;
  const double px0 = coefficient / n0;
  const double px1 = -0.5 * px0 / b0;
  const double px2 = px0 * b0;
  const double px3 = -15.0 * eccentricity_0 * px2;
  const double ra_dot = (inclination_0 < 5.2359877e-2 || inclination_0 > kPi - 5.2359877e-2)
                            ? 0.0
                            : -mean_motion * px1 * (zx21 + zx23) / si;
  ThirdBody body;
  body.kx = {
      2.0 * px3 * (xx2 * xx3 + xx1 * xx4),
      2.0 * px3 * (xx2 * xx4 - xx1 * xx3),
      2.0 * px1 *
          (-6.0 * (ax1 * ax6 + ax3 * ax5) +
           e2 * (-24.0 * (xx2 * xx7 + xx1 * xx8) - 6.0 * (xx3 * xx6 + xx4 * xx5))),
      2.0 * px1 * (zx13 - zx11),
      -2.0 * px0 * ((6.0 * (ax1 * ax3 + ax2 * ax4) + zx32 * e2) * 2.0 + p1 * zx32),
      -2.0 * px0 * (zx3 - zx1),
      -2.0 * px0 * (-21.0 - 9.0 * e2) * eccentricity,
      2.0 * px2 * zx32,
      2.0 * px2 * (zx33 - zx31),
      -18.0 * px2 * eccentricity,
      -2.0 * px1 *
          (6.0 * (ax4 * ax5 + ax2 * ax6) +
           e2 * (24.0 * (xx2 * xx5 + xx1 * xx6) - 6.0 * (xx4 * xx7 + xx3 * xx8))),
      -2.0 * px1 * (zx23 - zx21),
  };
  body.mean_anomaly_0 = mean_anomaly_0;
  Dots dots{px1 * mean_motion * (zx11 + zx13), ra_dot,
            px3 * mean_motion * (xx1 * xx3 + xx2 * xx4),
            px2 * mean_motion * (zx31 + zx33 - 6.0) - ci * ra_dot,
            -mean_motion * px0 * (zx1 + zx3 - 14.0 - 6.0 * e2)};
  return {body, dots};
}

std::array<double, 5> Sgp4::long_period(const ThirdBody& b, double eccentricity,
                                        double mean_motion, double t) {
  const double m = b.mean_anomaly_0 + mean_motion * t;
  const double fx = m + 2.0 * eccentricity * std::sin(m);
  const double sf = std::sin(fx);
  const double fx2 = 0.5 * sq(sf) - 0.25;
  const double fx3 = -0.5 * sf * std::cos(fx);
  const auto& k = b.kx;
  return {k[0] * fx2 + k[1] * fx3, k[2] * fx2 + k[3] * fx3, k[4] * fx2 + k[5] * fx3 + k[6] * sf,
          k[7] * fx2 + k[8] * fx3 + k[9] * sf, k[10] * fx2 + k[11] * fx3};
}

Sgp4::Sgp4(const MeanElements& el, Sgp4Mode mode)
    : mode_(mode), g_(mode == Sgp4Mode::kAfspc ? kWgs72 : kWgs84) {
  const double inclination = el.inclination * kDegToRad;
  const double eccentricity = el.eccentricity;
  const double kozai = el.mean_motion * (kPi / 720.0);
  if (!(kozai > 0.0)) {
    throw PropagationError(PropagationError::Kind::kMeanEccentricity,
                           "non-positive Kozai mean motion");
  }
  // Kozai -> Brouwer mean motion.
  double mean_motion;
  {
    const double a1 = std::pow(g_.ke / kozai, 2.0 / 3.0);
    const double p0 = 0.75 * g_.j2 * (3.0 * sq(std::cos(inclination)) - 1.0) /
                      std::pow(1.0 - sq(eccentricity), 1.5);
    const double d1 = p0 / sq(a1);
    const double d0 = p0 / sq(a1 * (1.0 - sq(d1) - d1 * (1.0 / 3.0 + 134.0 * sq(d1) / 81.0)));
    mean_motion = kozai / (1.0 + d0);
  }
  if (!(mean_motion > 0.0)) {
    throw PropagationError(PropagationError::Kind::kMeanEccentricity,
                           "non-positive Brouwer mean motion");
  }
  orbit_0_ = {inclination,
              el.right_ascension * kDegToRad,
              eccentricity,
              el.argument_of_perigee * kDegToRad,
              el.mean_anomaly * kDegToRad,
              mean_motion};
  if (eccentricity < 0.0 || eccentricity >= 1.0) {
    throw PropagationError(PropagationError::Kind::kMeanEccentricity,
                           "epoch eccentricity outside [0, 1)");
  }
  const double epoch = days_since_j2000(el.epoch) / 365.25;
  const double drag = el.bstar;
  const Orbit& o = orbit_0_;

  const double p1 = std::cos(o.inclination);
  const double p2 = 1.0 - sq(o.eccentricity);
  const double k6 = 3.0 * sq(p1) - 1.0;
  const double a0 = std::pow(g_.ke / o.mean_motion, 2.0 / 3.0);
  const double p3 = a0 * (1.0 - o.eccentricity);
  double s, p6;
  {
    const double p4 = g_.ae * (p3 - 1.0);
    const double p5 = p4 < 98.0 ? 20.0 : (p4 < 156.0 ? p4 - 78.0 : 78.0);
    s = p5 / g_.ae + 1.0;
    p6 = std::pow((120.0 - p5) / g_.ae, 4);
  }
  const double xi = 1.0 / (a0 - s);
  const double p7 = p6 * std::pow(xi, 4);
  const double eta = a0 * o.eccentricity * xi;
  const double p8 = std::abs(1.0 - sq(eta));
  const double p9 = p7 / std::pow(p8, 3.5);
  const double c1 =
      drag * (p9 * o.mean_motion *
              (a0 * (1.0 + 1.5 * sq(eta) + o.eccentricity * eta * (4.0 + sq(eta))) +
               0.375 * g_.j2 * xi / p8 * k6 * (8.0 + 3.0 * sq(eta) * (8.0 + sq(eta)))));
  const double p10 = 1.0 / sq(a0 * p2);
  const double b0 = std::sqrt(p2);
  const double p11 = 1.5 * g_.j2 * p10 * o.mean_motion;
  const double p12 = 0.5 * p11 * g_.j2 * p10;
  const double p13 = -0.46875 * g_.j4 * sq(p10) * o.mean_motion;
  const double p14 =
      -p11 * p1 + (0.5 * p12 * (4.0 - 19.0 * sq(p1)) + 2.0 * p13 * (3.0 - 7.0 * sq(p1))) * p1;
  const double k14 = -0.5 * p11 * (1.0 - 5.0 * sq(p1)) +
                     0.0625 * p12 * (7.0 - 114.0 * sq(p1) + 395.0 * std::pow(p1, 4)) +
                     p13 * (3.0 - 36.0 * sq(p1) + 49.0 * std::pow(p1, 4));
  const double p15 = o.mean_motion + 0.5 * p11 * b0 * k6 +
                     0.0625 * p12 * b0 * (13.0 - 78.0 * sq(p1) + 137.0 * std::pow(p1, 4));
  const double c4 =
      drag *
      (2.0 * o.mean_motion * p9 * a0 * p2 *
       (eta * (2.0 + 0.5 * sq(eta)) + o.eccentricity * (0.5 + 2.0 * sq(eta)) -
        g_.j2 * xi / (a0 * p8) *
            (-3.0 * k6 *
                 (1.0 - 2.0 * o.eccentricity * eta + sq(eta) * (1.5 - 0.5 * o.eccentricity * eta)) +
             0.75 * (1.0 - sq(p1)) * (2.0 * sq(eta) - o.eccentricity * eta * (1.0 + sq(eta))) *
                 std::cos(2.0 * o.argument_of_perigee))));
  const double k0 = 3.5 * p2 * (-p11 * p1) * c1;
  const double k1 = 1.5 * c1;
  c1_ = c1;
  c4_ = c4;
  k0_ = k0;
  k1_ = k1;

  if (o.mean_motion > kTwoPi / 225.0) {
    deep_space_ = false;
    ra_dot_ = p14;
    argp_dot_ = k14;
    ma_dot_ = p15;
    a0_ = a0;
    const double j3j2 = g_.j3 / g_.j2;
    const double si = std::sin(o.inclination);
    k2_ = -0.5 * j3j2 * si;
    k3_ = 1.0 - sq(p1);
    k4_ = 7.0 * sq(p1) - 1.0;
    k5_ = -0.25 * j3j2 * si * (3.0 + 5.0 * p1) /
          (std::abs(1.0 + p1) > 1.5e-12 ? (1.0 + p1) : 1.5e-12);
    k6_ = k6;
    high_altitude_ = !(p3 < 220.0 / g_.ae + 1.0);
    if (high_altitude_) {
      d2_ = 4.0 * a0 * xi * sq(c1);
      const double p16 = d2_ * xi * c1 / 3.0;
      d3_ = (17.0 * a0 + s) * p16;
      d4_ = 0.5 * p16 * a0 * xi * (221.0 * a0 + 31.0 * s) * c1;
      c5_ = drag * (2.0 * p9 * a0 * p2 *
                    (1.0 + 2.75 * (sq(eta) + eta * o.eccentricity) +
                     eta * o.eccentricity * sq(eta)));
      eta_ = eta;
      k7_ = std::sin(o.mean_anomaly);
      k8_ = d2_ + 2.0 * sq(c1);
      k9_ = 0.25 * (3.0 * d3_ + c1 * (12.0 * d2_ + 10.0 * sq(c1)));
      k10_ = 0.2 * (3.0 * d4_ + 12.0 * c1 * d3_ + 6.0 * sq(d2_) + 15.0 * sq(c1) * (2.0 * d2_ + sq(c1)));
      elliptic_ = o.eccentricity > 1.0e-4;
      if (elliptic_) {
        k11_ = cube(1.0 + eta * std::cos(o.mean_anomaly));
        k12_ = drag * (-2.0 * p7 * xi * j3j2 * o.mean_motion * si / o.eccentricity) *
               std::cos(o.argument_of_perigee);
        k13_ = -2.0 / 3.0 * p7 * drag / (o.eccentricity * eta);
      }
    }
    return;
  }

  deep_space_ = true;
  const double d1900 = (epoch + 100.0) * 365.25;
  const double sra = std::sin(o.right_ascension);
  const double cra = std::cos(o.right_ascension);
  auto [solar, solar_dots] = third_body(
      o.inclination, o.eccentricity, o.argument_of_perigee, o.mean_motion, 0.39785416, 0.91744867,
      sra, cra, kSolarEccentricity, -0.98088458, 0.1945905, kSolarCoefficient, kSolarMeanMotion,
      std::fmod(6.2565837 + 0.017201977 * d1900, kTwoPi), p2, b0);
  const double lunar_eps = std::fmod(4.5236020 - 9.2422029e-4 * d1900, kTwoPi);
  const double lunar_ci = 0.91375164 - 0.03568096 * std::cos(lunar_eps);
  const double lunar_si = std::sqrt(1.0 - sq(lunar_ci));
  const double lunar_sra = 0.089683511 * std::sin(lunar_eps) / lunar_si;
  const double lunar_cra = std::sqrt(1.0 - sq(lunar_sra));
  const double lunar_argp =
      5.8351514 + 0.001944368 * d1900 +
      std::atan2(0.39785416 * std::sin(lunar_eps) / lunar_si,
                 lunar_cra * std::cos(lunar_eps) + 0.91744867 * lunar_sra * std::sin(lunar_eps)) -
      lunar_eps;
  auto [lunar, lunar_dots] = third_body(
      o.inclination, o.eccentricity, o.argument_of_perigee, o.mean_motion, lunar_si, lunar_ci,
      sra * lunar_cra - cra * lunar_sra, lunar_cra * cra + lunar_sra * sra, kLunarEccentricity,
      std::sin(lunar_argp), std::cos(lunar_argp), kLunarCoefficient, kLunarMeanMotion,
      std::fmod(-1.1151842 + 0.228027132 * d1900, kTwoPi), p2, b0);
  solar_ = solar;
  lunar_ = lunar;
  ra_dot_ = p14 + (solar_dots.right_ascension + lunar_dots.right_ascension);
  argp_dot_ = k14 + (solar_dots.argument_of_perigee + lunar_dots.argument_of_perigee);
  ma_dot_ = p15 + (solar_dots.mean_anomaly + lunar_dots.mean_anomaly);
  ecc_dot_ = solar_dots.eccentricity + lunar_dots.eccentricity;
  inc_dot_ = solar_dots.inclination + lunar_dots.inclination;
  a0_ = a0;

  const bool one_day = o.mean_motion < 0.0052359877 && o.mean_motion > 0.0034906585;
  const bool half_day =
      o.mean_motion >= 8.26e-3 && o.mean_motion <= 9.24e-3 && o.eccentricity >= 0.5;
  if (!one_day && !half_day) return;

  const double theta0 = mode_ == Sgp4Mode::kAfspc ? afspc_sidereal_time(epoch) : iau_sidereal_time(epoch);
  sidereal_time_0_ = theta0;
  const double si = std::sin(o.inclination);
  const double e = o.eccentricity;
  if (one_day) {
    resonance_ = Resonance::kOneDay;
    lambda_0_ = std::fmod(o.mean_anomaly + o.right_ascension + o.argument_of_perigee - theta0, kTwoPi);
    lambda_dot_0_ = p15 + (k14 + p14) - kSiderealSpeed +
                    (solar_dots.mean_anomaly + lunar_dots.mean_anomaly) +
                    (solar_dots.argument_of_perigee + lunar_dots.argument_of_perigee) +
                    (solar_dots.right_ascension + lunar_dots.right_ascension) - o.mean_motion;
    const double p17 = 3.0 * sq(o.mean_motion / a0);
    dr1_ = p17 * (0.9375 * sq(si) * (1.0 + 3.0 * p1) - 0.75 * (1.0 + p1)) * (1.0 + 2.0 * sq(e)) *
           2.1460748e-6 / a0;
    dr2_ = 2.0 * p17 * (0.75 * sq(1.0 + p1)) * (1.0 + sq(e) * (-2.5 + 0.8125 * sq(e))) * 1.7891679e-6;
    dr3_ = 3.0 * p17 * (1.875 * cube(1.0 + p1)) * (1.0 + sq(e) * (-6.0 + 6.60937 * sq(e))) *
           2.2123015e-7 / a0;
    return;
  }

  resonance_ = Resonance::kHalfDay;
  lambda_0_ = std::fmod(o.mean_anomaly + o.right_ascension + o.right_ascension - theta0 - theta0, kTwoPi);
  lambda_dot_0_ = p15 + (solar_dots.mean_anomaly + lunar_dots.mean_anomaly) +
                  2.0 * (p14 + (solar_dots.right_ascension + lunar_dots.right_ascension) - kSiderealSpeed) -
                  o.mean_motion;
  const double p18 = 3.0 * sq(o.mean_motion) * sq(1.0 / a0);
  const double p19 = p18 * (1.0 / a0);
  const double p20 = p19 * (1.0 / a0);
  const double p21 = p20 * (1.0 / a0);
  const double f220 = 0.75 * (1.0 + 2.0 * p1 + sq(p1));
  double g211, g310, g322, g410, g422;
  if (e <= 0.65) {
    g211 = 3.616 - 13.247 * e + 16.29 * sq(e);
    g310 = -19.302 + 117.39 * e - 228.419 * sq(e) + 156.591 * cube(e);
    g322 = -18.9068 + 109.7927 * e - 214.6334 * sq(e) + 146.5816 * cube(e);
    g410 = -41.122 + 242.694 * e - 471.094 * sq(e) + 313.953 * cube(e);
    g422 = -146.407 + 841.88 * e - 1629.014 * sq(e) + 1083.435 * cube(e);
  } else {
    g211 = -72.099 + 331.819 * e - 508.738 * sq(e) + 266.724 * cube(e);
    g310 = -346.844 + 1582.851 * e - 2415.925 * sq(e) + 1246.113 * cube(e);
    g322 = -342.585 + 1554.908 * e - 2366.899 * sq(e) + 1215.972 * cube(e);
    g410 = -1052.797 + 4758.686 * e - 7193.992 * sq(e) + 3651.957 * cube(e);
    g422 = -3581.69 + 16178.11 * e - 24462.77 * sq(e) + 12422.52 * cube(e);
  }
  double g520;
  if (e <= 0.65) {
    g520 = -532.114 + 3017.977 * e - 5740.032 * sq(e) + 3708.276 * cube(e);
  } else if (e < 0.715) {
    g520 = 1464.74 - 4664.75 * e + 3763.64 * sq(e);
  } else {
    g520 = -5149.66 + 29936.92 * e - 54087.36 * sq(e) + 31324.56 * cube(e);
  }
  double g532, g521, g533;
  if (e < 0.7) {
    g532 = -853.666 + 4690.25 * e - 8624.77 * sq(e) + 5341.4 * cube(e);
    g521 = -822.71072 + 4568.6173 * e - 8491.4146 * sq(e) + 5337.524 * cube(e);
    g533 = -919.2277 + 4988.61 * e - 9064.77 * sq(e) + 5542.21 * cube(e);
  } else {
    g532 = -40023.88 + 170470.89 * e - 242699.48 * sq(e) + 115605.82 * cube(e);
    g521 = -51752.104 + 218913.95 * e - 309468.16 * sq(e) + 146349.42 * cube(e);
    g533 = -37995.78 + 161616.52 * e - 229838.2 * sq(e) + 109377.94 * cube(e);
  }
  dhalf_ = {
      p18 * 1.7891679e-6 * f220 * (-0.306 - (e - 0.64) * 0.44),
      p18 * 1.7891679e-6 * (1.5 * sq(si)) * g211,
      p19 * 3.7393792e-7 * (1.875 * si * (1.0 - 2.0 * p1 - 3.0 * sq(p1))) * g310,
      p19 * 3.7393792e-7 * (-1.875 * si * (1.0 + 2.0 * p1 - 3.0 * sq(p1))) * g322,
      2.0 * p20 * 7.3636953e-9 * (35.0 * sq(si) * f220) * g410,
      2.0 * p20 * 7.3636953e-9 * (39.375 * std::pow(si, 4)) * g422,
      p21 * 1.1428639e-7 *
          (9.84375 * si *
           (sq(si) * (1.0 - 2.0 * p1 - 5.0 * sq(p1)) + 0.33333333 * (-2.0 + 4.0 * p1 + 6.0 * sq(p1)))) *
          g520,
      p21 * 1.1428639e-7 *
          (si * (4.92187512 * sq(si) * (-2.0 - 4.0 * p1 + 10.0 * sq(p1)) +
                 6.56250012 * (1.0 + 2.0 * p1 - 3.0 * sq(p1)))) *
          g532,
      2.0 * p21 * 2.1765803e-9 *
          (29.53125 * si * (2.0 - 8.0 * p1 + sq(p1) * (-12.0 + 8.0 * p1 + 10.0 * sq(p1)))) * g521,
      2.0 * p21 * 2.1765803e-9 *
          (29.53125 * si * (-2.0 - 8.0 * p1 + sq(p1) * (12.0 + 8.0 * p1 - 10.0 * sq(p1)))) * g533,
  };
  k14_ = k14;
}

Sgp4::Elements Sgp4::near_earth_elements(double t, double p22, double p23) const {
  const double p24 = orbit_0_.mean_anomaly + ma_dot_ * t;
  double argp, mean_anomaly, a, p27;
  if (!high_altitude_) {
    argp = p23;
    mean_anomaly = p24 + orbit_0_.mean_motion * k1_ * sq(t);
    a = a0_ * sq(1.0 - c1_ * t);
    p27 = orbit_0_.eccentricity - c4_ * t;
  } else {
    double p26 = p24;
    argp = p23;
    if (elliptic_) {
      const double p25 = k13_ * (cube(1.0 + eta_ * std::cos(p24)) - k11_) + k12_ * t;
      argp = p23 - p25;
      p26 = p24 + p25;
    }
    mean_anomaly = p26 + orbit_0_.mean_motion *
                             (k1_ * sq(t) + k8_ * cube(t) + std::pow(t, 4) * (k9_ + t * k10_));
    a = a0_ * sq(1.0 - c1_ * t - d2_ * sq(t) - d3_ * cube(t) - d4_ * std::pow(t, 4));
    p27 = orbit_0_.eccentricity - (c4_ * t + c5_ * (std::sin(p26) - k7_));
  }
  if (!(p27 >= -0.001 && p27 < 1.0)) {
    throw PropagationError(PropagationError::Kind::kMeanEccentricity,
                           "mean eccentricity out of range at t=" + std::to_string(t) + " min");
  }
  Elements out;
  out.orbit = {orbit_0_.inclination, p22, std::max(p27, 1.0e-6), argp, mean_anomaly,
               g_.ke / std::pow(a, 1.5)};
  out.a = a;
  out.p32 = k2_;
  out.p33 = k3_;
  out.p34 = k4_;
  out.p35 = k5_;
  out.p36 = k6_;
  return out;
}

std::pair<double, double> Sgp4::integrate_resonance(double t, double p22, double p23) const {
  // Always integrated from epoch so propagate() stays a pure function of t.
  double st = 0.0;
  double n = orbit_0_.mean_motion;
  double lambda = lambda_0_;
  const double sidereal_time = std::fmod(sidereal_time_0_ + t * kSiderealSpeed, kTwoPi);
  const double delta_t = t > 0.0 ? kDeltaT : -kDeltaT;
  for (;;) {
    const double lambda_dot = n + lambda_dot_0_;
    double ni_dot, ni_ddot;
    if (resonance_ == Resonance::kOneDay) {
      ni_dot = dr1_ * std::sin(lambda - kLambda31) + dr2_ * std::sin(2.0 * (lambda - kLambda22)) +
               dr3_ * std::sin(3.0 * (lambda - kLambda33));
      ni_ddot = (dr1_ * std::cos(lambda - kLambda31) +
                 2.0 * dr2_ * std::cos(2.0 * (lambda - kLambda22)) +
                 3.0 * dr3_ * std::cos(3.0 * (lambda - kLambda33))) *
                lambda_dot;
    } else {
      const auto& d = dhalf_;
      const double w = orbit_0_.argument_of_perigee + k14_ * st;
      ni_dot = d[0] * std::sin(2.0 * w + lambda - kG22) + d[1] * std::sin(lambda - kG22) +
               d[2] * std::sin(w + lambda - kG32) + d[3] * std::sin(-w + lambda - kG32) +
               d[4] * std::sin(2.0 * w + 2.0 * lambda - kG44) + d[5] * std::sin(2.0 * lambda - kG44) +
               d[6] * std::sin(w + lambda - kG52) + d[7] * std::sin(-w + lambda - kG52) +
               d[8] * std::sin(w + 2.0 * lambda - kG54) + d[9] * std::sin(-w + 2.0 * lambda - kG54);
      ni_ddot = (d[0] * std::cos(2.0 * w + lambda - kG22) + d[1] * std::cos(lambda - kG22) +
                 d[2] * std::cos(w + lambda - kG32) + d[3] * std::cos(-w + lambda - kG32) +
                 d[6] * std::cos(w + lambda - kG52) + d[7] * std::cos(-w + lambda - kG52) +
                 2.0 * (d[4] * std::cos(2.0 * w + 2.0 * lambda - kG44) +
                        d[5] * std::cos(2.0 * lambda - kG44) +
                        d[8] * std::cos(w + 2.0 * lambda - kG54) +
                        d[9] * std::cos(-w + 2.0 * lambda - kG54))) *
                lambda_dot;
    }
    const bool done = t > 0.0 ? (t - delta_t < st) : (t - delta_t > st);
    if (done) {
      const double dt = t - st;
      const double a = std::pow(g_.ke / (n + ni_dot * dt + ni_ddot * sq(dt) * 0.5), 2.0 / 3.0);
      double m;
      if (resonance_ == Resonance::kOneDay) {
        m = lambda + lambda_dot * dt + ni_dot * sq(dt) * 0.5 - p22 - p23 + sidereal_time;
      } else {
        m = lambda + lambda_dot * dt + ni_dot * sq(dt) * 0.5 - 2.0 * p22 + 2.0 * sidereal_time;
      }
      return {a, m};
    }
    st += delta_t;
    n += ni_dot * delta_t + ni_ddot * (kDeltaT * kDeltaT / 2.0);
    lambda += lambda_dot * delta_t + ni_dot * (kDeltaT * kDeltaT / 2.0);
  }
}

Sgp4::Elements Sgp4::deep_space_elements(double t, double p22, double p23) const {
  double p28, p29;
  if (resonance_ == Resonance::kNone) {
    p28 = a0_;
    p29 = orbit_0_.mean_anomaly + ma_dot_ * t;
  } else {
    std::tie(p28, p29) = integrate_resonance(t, p22, p23);
  }
  const auto s = long_period(solar_, kSolarEccentricity, kSolarMeanMotion, t);
  const auto l = long_period(lunar_, kLunarEccentricity, kLunarMeanMotion, t);
  const double d_inc = s[1] + l[1];
  const double inclination = orbit_0_.inclination + inc_dot_ * t + d_inc;
  const double p4 = s[3] + l[3];
  const double p5 = s[4] + l[4];
  double ra, argp;
  if (inclination >= 0.2) {
    ra = p22 + p5 / std::sin(inclination);
    argp = p23 + p4 - std::cos(inclination) * (p5 / std::sin(inclination));
  } else {
    const double si = std::sin(inclination);
    const double ci = std::cos(inclination);
    const double p30 = std::atan2(si * std::sin(p22) + (p5 * std::cos(p22) + d_inc * ci * std::sin(p22)),
                                  si * std::cos(p22) + (-p5 * std::sin(p22) + d_inc * ci * std::cos(p22)));
    const double p22m = std::fmod(p22, kTwoPi);
    if (p30 < p22m - kPi) {
      ra = p30 + kTwoPi;
    } else if (p30 > p22m + kPi) {
      ra = p30 - kTwoPi;
    } else {
      ra = p30;
    }
    const double wrap = mode_ == Sgp4Mode::kAfspc ? rem_euclid(p22, kTwoPi) : p22m;
    argp = p23 + p4 + ci * (p22m - ra) - d_inc * wrap * si;
  }
  const double p31 = orbit_0_.eccentricity + ecc_dot_ * t - c4_ * t;
  if (!(p31 >= -0.001 && p31 < 1.0)) {
    throw PropagationError(PropagationError::Kind::kMeanEccentricity,
                           "mean eccentricity out of range at t=" + std::to_string(t) + " min");
  }
  const double ecc = std::max(p31, 1.0e-6) + (s[0] + l[0]);
  if (!(ecc >= 0.0 && ecc <= 1.0)) {
    throw PropagationError(PropagationError::Kind::kPerturbedEccentricity,
                           "perturbed eccentricity out of range at t=" + std::to_string(t) + " min");
  }
  const double a = p28 * sq(1.0 - c1_ * t);
  const double ci = std::cos(inclination);
  const double si = std::sin(inclination);
  const double j3j2 = g_.j3 / g_.j2;
  Elements out;
  out.orbit = {inclination, ra, ecc, argp,
               p29 + (s[2] + l[2]) + orbit_0_.mean_motion * k1_ * sq(t), g_.ke / std::pow(a, 1.5)};
  out.a = a;
  out.p32 = -0.5 * j3j2 * si;
  out.p33 = 1.0 - sq(ci);
  out.p34 = 7.0 * sq(ci) - 1.0;
  out.p35 = -0.25 * j3j2 * si * (3.0 + 5.0 * ci) / (std::abs(1.0 + ci) > 1.5e-12 ? (1.0 + ci) : 1.5e-12);
  out.p36 = 3.0 * sq(ci) - 1.0;
  return out;
}

TemeState Sgp4::propagate(double t) const {
  const double p22 = orbit_0_.right_ascension + ra_dot_ * t + k0_ * sq(t);
  const double p23 = orbit_0_.argument_of_perigee + argp_dot_ * t;
  const Elements el = deep_space_ ? deep_space_elements(t, p22, p23) : near_earth_elements(t, p22, p23);
  const Orbit& orbit = el.orbit;
  const double a = el.a;

  const double p37 = 1.0 / (a * (1.0 - sq(orbit.eccentricity)));
  const double axn = orbit.eccentricity * std::cos(orbit.argument_of_perigee);
  const double ayn = orbit.eccentricity * std::sin(orbit.argument_of_perigee) + p37 * el.p32;
  const double p38 = std::fmod(orbit.mean_anomaly + orbit.argument_of_perigee + p37 * el.p35 * axn, kTwoPi);
  double ew = p38;
  for (int i = 0; i < 10; ++i) {
    const double delta = (p38 - ayn * std::cos(ew) + axn * std::sin(ew) - ew) /
                         (1.0 - std::cos(ew) * axn - std::sin(ew) * ayn);
    if (std::abs(delta) < 1.0e-12) break;
    ew += std::clamp(delta, -0.95, 0.95);
  }
  const double p39 = sq(axn) + sq(ayn);
  const double pl = a * (1.0 - p39);
  if (pl < 0.0) {
    throw PropagationError(PropagationError::Kind::kNegativeSemiLatusRectum,
                           "negative semi-latus rectum at t=" + std::to_string(t) + " min");
  }
  const double sew = std::sin(ew);
  const double cew = std::cos(ew);
  const double p40 = axn * sew - ayn * cew;
  const double r = a * (1.0 - (axn * cew + ayn * sew));
  const double r_dot = std::sqrt(a) * p40 / r;
  const double b = std::sqrt(1.0 - p39);
  const double p41 = p40 / (1.0 + b);
  const double p42 = a / r * (sew - ayn - axn * p41);
  const double p43 = a / r * (cew - axn + ayn * p41);
  const double u = std::atan2(p42, p43);
  const double p44 = 2.0 * p43 * p42;
  const double p45 = 1.0 - 2.0 * sq(p42);
  const double p46 = 0.5 * g_.j2 / pl / pl;
  const double rk = r * (1.0 - 1.5 * p46 * b * el.p36) + 0.5 * (0.5 * g_.j2 / pl) * el.p33 * p45;
  const double uk = u - 0.25 * p46 * el.p34 * p44;
  const double inc_k = orbit.inclination + 1.5 * p46 * std::cos(orbit.inclination) * std::sin(orbit.inclination) * p45;
  const double ra_k = orbit.right_ascension + 1.5 * p46 * std::cos(orbit.inclination) * p44;
  const double rk_dot = r_dot - orbit.mean_motion * (0.5 * g_.j2 / pl) * el.p33 * p44 / g_.ke;
  const double rfk_dot =
      std::sqrt(pl) / r + orbit.mean_motion * (0.5 * g_.j2 / pl) * (el.p33 * p45 + 1.5 * el.p36) / g_.ke;

  const double sra = std::sin(ra_k), cra = std::cos(ra_k);
  const double sik = std::sin(inc_k), cik = std::cos(inc_k);
  const double suk = std::sin(uk), cuk = std::cos(uk);
  const double u0 = -sra * cik * suk + cra * cuk;
  const double u1 = cra * cik * suk + sra * cuk;
  const double u2 = sik * suk;
  const double vscale = g_.ae * g_.ke / 60.0;
  TemeState out;
  out.position = {rk * u0 * g_.ae, rk * u1 * g_.ae, rk * u2 * g_.ae};
  out.velocity = {(rk_dot * u0 + rfk_dot * (-sra * cik * cuk - cra * suk)) * vscale,
                  (rk_dot * u1 + rfk_dot * (cra * cik * cuk - sra * suk)) * vscale,
                  (rk_dot * u2 + rfk_dot * (sik * cuk)) * vscale};
  return out;
}

}  // namespace eos
