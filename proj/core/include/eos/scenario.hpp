// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_SCENARIO_HPP_
#define EOS_SCENARIO_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eos/astro.hpp"
#include "eos/demand.hpp"
#include "eos/geo.hpp"
#include "eos/time.hpp"
#include "eos/tle.hpp"

namespace eos {

struct Horizon {
  Instant start;
  double duration_hours = 8.0;
  double granularity_s = 10.0;

  friend bool operator==(const Horizon&, const Horizon&) = default;
};

inline constexpr double kMaxHorizonSteps = 1e7;

// Throws ValidationError.
void validate(const Horizon& h);
Instant horizon_end(const Horizon& h);
// Number of sampled instants start + k*granularity inside [start, end].
std::int64_t step_count(const Horizon& h);

enum class StereoRole { kMono, kStereoFirst, kStereoSecond };
std::string_view to_string(StereoRole role);
StereoRole parse_stereo_role(std::string_view text);

enum Criterion : int {
  kArea = 0,
  kOffNadir,
  kSunElevation,
  kCloudCover,
  kPriority,
  kPrice,
  kAge,
  kUncertainty,
  kCriteriaCount
};
using CriteriaVector = std::array<double, kCriteriaCount>;
std::string_view criterion_name(int c);

struct Attempt {
  int attempt_id = 0;
  int request_id = 0;
  int satellite = 0;  // norad id
  int strip_index = 0;
  StereoRole stereo_role = StereoRole::kMono;
  int pass_id = 0;  // visibility pass index for (satellite, request, strip)
  Instant t_clock;
  double acq_duration = 0.0;  // s
  Vec3 los;                   // unit, ECI
  double off_nadir = 0.0;     // deg
  double sun_elev = 0.0;      // deg
  double cloud_cover = 0.0;   // fraction
  double memory_mb = 0.0;
  GeodeticPoint target;  // strip center
  CriteriaVector criteria{};

  friend bool operator==(const Attempt&, const Attempt&) = default;
};

struct StereoPair {
  int first = 0;   // attempt_id with role stereo_first
  int second = 0;  // attempt_id with role stereo_second
  double convergence_deg = 0.0;

  friend bool operator==(const StereoPair&, const StereoPair&) = default;
};

struct SatelliteEntry {
  TwoLineElement tle;
  SatelliteSpec spec;
};

struct PerformanceTable {
  Horizon horizon;
  std::vector<SatelliteEntry> satellites;
  // Database with n_strips rebound to swath_reference_km.
  std::vector<Request> requests;
  double swath_reference_km = 60.0;
  std::vector<Attempt> attempts;  // sorted by (t_clock, attempt_id), ids dense
  std::vector<StereoPair> stereo_pairs;

  const SatelliteSpec& spec_for(int norad_id) const;  // throws ValidationError
  const Request& request(int request_id) const;      // throws ValidationError
};

// Checks ordering, id density, tuple uniqueness, gate compliance and pair
// references. Throws ValidationError.
void validate(const PerformanceTable& table);

struct CloudSource {
  enum class Mode { kSynthetic, kHttpPointForecast };
  Mode mode = Mode::kSynthetic;
  std::uint64_t seed = 7;
  std::string endpoint;  // http mode
  std::string api_key_env = "EOS_WEATHER_API_KEY";
  double timeout_s = 2.0;
  int retries = 1;
};

class CloudProvider {
 public:
  virtual ~CloudProvider() = default;
  // Forecast cloud fraction in [0, 1]. Must be thread-safe.
  virtual double cloud_cover(const GeodeticPoint& location, Instant t) const = 0;
};

std::unique_ptr<CloudProvider> make_cloud_provider(const CloudSource& source);

// Latitude climatology plus seeded value noise; deterministic, in [0, 1].
double synthetic_cloud(const GeodeticPoint& location, Instant t, std::uint64_t seed);
double cloud_climatology(double latitude_deg);

struct ScenarioOptions {
  bool keep_all_steps = false;
  int workers = 0;  // 0 = hardware concurrency
  double min_sun_elevation = 15.0;
  double max_cloud_cover = 0.60;
  double stereo_min_convergence = 15.0;
  double stereo_max_convergence = 20.0;
};

PerformanceTable enumerate_attempts(std::span<const Request> db,
                                    std::span<const SatelliteEntry> sats, const Horizon& horizon,
                                    const CloudSource& clouds, const ScenarioOptions& options = {});
PerformanceTable enumerate_attempts(std::span<const Request> db,
                                    std::span<const SatelliteEntry> sats, const Horizon& horizon,
                                    const CloudProvider& clouds,
                                    const ScenarioOptions& options = {});

// Along-track strip length / ground speed, floored at 1 s.
double acquisition_duration(const Request& req, const SatelliteSpec& spec,
                            const EphemerisSample& sample);
int strip_count(const Request& req, const SatelliteSpec& spec);
int strip_count(double area_km2, double swath_km);
// Uncompressed image of swath^2 at 2 bytes per pixel, in MiB.
double memory_usage(const SatelliteSpec& spec);

// Strip center for strip s of n, offset north-south by the reference swath.
GeodeticPoint strip_center(const Request& req, int strip_index, double swath_reference_km);

// Angle at target between the two target-to-satellite directions, degrees.
double convergence_angle(const GeodeticPoint& target, const Vec3& sat_ecef_a,
                         const Vec3& sat_ecef_b);

}  // namespace eos

#endif  // EOS_SCENARIO_HPP_
