// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "eos/errors.hpp"
#include "parallel.hpp"

namespace eos {
namespace {

constexpr double kBytesPerPixel = 2.0;
constexpr double kPolarRadiusKm = 6356.752;
constexpr double kKmPerDegreeLat = 111.195;
constexpr double kMinLeoAltitude = 200.0;
constexpr double kMaxLeoAltitude = 2000.0;

struct StepGeometry {
  Vec3 dir;                 // unit ECEF direction of the satellite
  double cos_max_central;   // prefilter threshold
};

struct LocalAttempt {
  Attempt a;
  std::int64_t step = 0;
};

struct TaskOutput {
  std::vector<LocalAttempt> attempts;
  std::vector<std::tuple<std::size_t, std::size_t, double>> pairs;  // local indices
};

struct StepEval {
  std::int64_t step;
  double off_nadir;
  double sun;
  double cloud;
  bool gates;
};

double max_central_angle(double altitude, double max_off_nadir_deg) {
  const double r = kPolarRadiusKm;
  const double theta = max_off_nadir_deg * kDegToRad;
  const double x = (r + altitude) / r * std::sin(theta);
  const double horizon = std::acos(r / (r + altitude));
  const double lambda = x >= 1.0 ? horizon : std::min(horizon, std::asin(x) - theta);
  return lambda + 1.0 * kDegToRad;
}

Vec3 up_vector(const GeodeticPoint& p) {
  const double lat = p.latitude * kDegToRad;
  const double lon = p.longitude * kDegToRad;
  return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

}  // namespace

void validate(const Horizon& h) {
  if (!std::isfinite(h.duration_hours) || h.duration_hours <= 0.0) {
    throw ValidationError("horizon duration must be > 0 hours");
  }
  if (!std::isfinite(h.granularity_s) || h.granularity_s < 1.0) {
    throw ValidationError("horizon granularity must be >= 1 s");
  }
  if (h.duration_hours * 3600.0 / h.granularity_s > kMaxHorizonSteps) {
    throw ValidationError("horizon has more than 1e7 steps");
  }
}

Instant horizon_end(const Horizon& h) { return add_seconds(h.start, h.duration_hours * 3600.0); }

std::int64_t step_count(const Horizon& h) {
  return static_cast<std::int64_t>(std::floor(h.duration_hours * 3600.0 / h.granularity_s + 1e-9)) + 1;
}

std::string_view to_string(StereoRole role) {
  switch (role) {
    case StereoRole::kMono: return "mono";
    case StereoRole::kStereoFirst: return "stereo_first";
    case StereoRole::kStereoSecond: return "stereo_second";
  }
  return "mono";
}

StereoRole parse_stereo_role(std::string_view text) {
  if (text == "mono") return StereoRole::kMono;
  if (text == "stereo_first") return StereoRole::kStereoFirst;
  if (text == "stereo_second") return StereoRole::kStereoSecond;
  throw ParseError("unknown stereo role '" + std::string(text) + "'");
}

std::string_view criterion_name(int c) {
  static constexpr std::array<std::string_view, kCriteriaCount> kNames{
      "area", "off_nadir", "sun_elev", "cloud_cover", "priority", "price", "age", "uncertainty"};
  if (c < 0 || c >= kCriteriaCount) throw ValidationError("criterion index out of range");
  return kNames[static_cast<std::size_t>(c)];
}

const SatelliteSpec& PerformanceTable::spec_for(int norad_id) const {
  for (const auto& s : satellites) {
    if (s.spec.norad_id == norad_id) return s.spec;
  }
  throw ValidationError("unknown satellite " + std::to_string(norad_id));
}

const Request& PerformanceTable::request(int request_id) const {
  auto it = std::lower_bound(requests.begin(), requests.end(), request_id,
                             [](const Request& r, int id) { return r.request_id < id; });
  if (it != requests.end() && it->request_id == request_id) return *it;
  for (const auto& r : requests) {
    if (r.request_id == request_id) return r;
  }
  throw ValidationError("unknown request " + std::to_string(request_id));
}

void validate(const PerformanceTable& table) {
  validate(table.horizon);
  const Instant end = horizon_end(table.horizon);
  std::set<std::tuple<int, int, std::int64_t, int, int>> seen;
  for (std::size_t i = 0; i < table.attempts.size(); ++i) {
    const Attempt& a = table.attempts[i];
    if (a.attempt_id != static_cast<int>(i)) throw ValidationError("attempt ids are not dense");
    if (i > 0 && a.t_clock < table.attempts[i - 1].t_clock) {
      throw ValidationError("attempts are not sorted by t_clock");
    }
    if (a.t_clock < table.horizon.start || a.t_clock > end) {
      throw ValidationError("attempt " + std::to_string(i) + " outside the horizon");
    }
    const SatelliteSpec& spec = table.spec_for(a.satellite);
    const Request& r = table.request(a.request_id);
    if (a.off_nadir > spec.max_off_nadir + 1e-9 || a.sun_elev < 15.0 - 1e-9 || a.cloud_cover > 0.60 + 1e-12) {
      throw ValidationError("attempt " + std::to_string(i) + " violates a quality gate");
    }
    if (!(a.acq_duration > 0.0) || !(a.memory_mb > 0.0)) {
      throw ValidationError("attempt " + std::to_string(i) + " has non-positive duration or memory");
    }
    if (a.strip_index < 0 || a.strip_index >= r.n_strips) {
      throw ValidationError("attempt " + std::to_string(i) + " strip index out of range");
    }
    if (r.stereo == (a.stereo_role == StereoRole::kMono)) {
      throw ValidationError("attempt " + std::to_string(i) + " role does not match request");
    }
    const CriteriaVector expect{r.area, a.off_nadir, a.sun_elev, a.cloud_cover,
                                static_cast<double>(r.priority), r.price,
                                static_cast<double>(r.age), r.uncertainty};
    if (a.criteria != expect) throw ValidationError("attempt " + std::to_string(i) + " criteria mismatch");
    if (!seen.insert({a.request_id, a.satellite, a.t_clock.time_since_epoch().count(), a.strip_index,
                      static_cast<int>(a.stereo_role)})
             .second) {
      throw ValidationError("duplicate attempt tuple at " + std::to_string(i));
    }
  }
  const int n = static_cast<int>(table.attempts.size());
  for (const auto& p : table.stereo_pairs) {
    if (p.first < 0 || p.first >= n || p.second < 0 || p.second >= n) {
      throw ValidationError("stereo pair references an unknown attempt");
    }
    const Attempt& f = table.attempts[static_cast<std::size_t>(p.first)];
    const Attempt& s = table.attempts[static_cast<std::size_t>(p.second)];
    if (f.stereo_role != StereoRole::kStereoFirst || s.stereo_role != StereoRole::kStereoSecond ||
        f.request_id != s.request_id || f.satellite != s.satellite || f.pass_id != s.pass_id ||
        !(f.t_clock < s.t_clock)) {
      throw ValidationError("malformed stereo pair");
    }
  }
}

double acquisition_duration(const Request& req, const SatelliteSpec& /*spec*/,
                            const EphemerisSample& sample) {
  if (!(sample.ground_speed > 0.0)) throw ValidationError("ground speed must be > 0");
  const double strip_length = std::sqrt(req.area) / std::max(1, req.n_strips);
  return std::max(1.0, strip_length / sample.ground_speed);
}

int strip_count(double area_km2, double swath_km) {
  if (!(area_km2 > 0.0) || !(swath_km > 0.0)) throw ValidationError("area and swath must be > 0");
  return std::max(1, static_cast<int>(std::ceil(std::sqrt(area_km2) / swath_km)));
}

int strip_count(const Request& req, const SatelliteSpec& spec) { return strip_count(req.area, spec.swath); }

double memory_usage(const SatelliteSpec& spec) {
  if (!(spec.swath > 0.0) || !(spec.resolution > 0.0)) {
    throw ValidationError("swath and resolution must be > 0");
  }
  const double pixels = spec.swath * spec.swath * 1e6 / spec.resolution;
  return pixels * kBytesPerPixel / (1024.0 * 1024.0);
}

GeodeticPoint strip_center(const Request& req, int strip_index, double swath_reference_km) {
  if (req.n_strips <= 1) return req.location;
  const double offset_km = (strip_index - (req.n_strips - 1) / 2.0) * swath_reference_km;
  const double lat = std::clamp(req.location.latitude + offset_km / kKmPerDegreeLat, -90.0, 90.0);
  return {lat, req.location.longitude, 0.0};
}

double convergence_angle(const GeodeticPoint& target, const Vec3& sat_ecef_a, const Vec3& sat_ecef_b) {
  const Vec3 t = geodetic_to_ecef(target);
  return angle_between(sat_ecef_a - t, sat_ecef_b - t) * kRadToDeg;
}

PerformanceTable enumerate_attempts(std::span<const Request> db, std::span<const SatelliteEntry> sats,
                                    const Horizon& horizon, const CloudSource& clouds,
                                    const ScenarioOptions& options) {
  const auto provider = make_cloud_provider(clouds);
  return enumerate_attempts(db, sats, horizon, *provider, options);
}

PerformanceTable enumerate_attempts(std::span<const Request> db, std::span<const SatelliteEntry> sats,
                                    const Horizon& horizon, const CloudProvider& clouds,
                                    const ScenarioOptions& options) {
  if (db.empty()) throw ValidationError("request database is empty");
  if (sats.empty()) throw ValidationError("at least one satellite is required");
  validate(horizon);
  validate(db);
  const Instant end = horizon_end(horizon);
  for (const auto& s : sats) {
    validate(s.spec);
    if (s.spec.norad_id != s.tle.norad_id) {
      throw ValidationError("satellite spec " + std::to_string(s.spec.norad_id) +
                            " does not match TLE catalog " + std::to_string(s.tle.norad_id));
    }
    const double limit = kTleValidityDays * 86400.0;
    if (std::abs(seconds_between(s.tle.epoch, horizon.start)) > limit ||
        std::abs(seconds_between(s.tle.epoch, end)) > limit) {
      throw ValidationError("horizon is outside the 30-day validity of the TLE for " +
                            std::to_string(s.tle.norad_id));
    }
  }

  PerformanceTable table;
  table.horizon = horizon;
  table.satellites.assign(sats.begin(), sats.end());
  table.swath_reference_km = std::numeric_limits<double>::infinity();
  for (const auto& s : sats) table.swath_reference_km = std::min(table.swath_reference_km, s.spec.swath);
  table.requests.assign(db.begin(), db.end());
  for (auto& r : table.requests) r.n_strips = r.stereo ? 1 : strip_count(r.area, table.swath_reference_km);
  std::sort(table.requests.begin(), table.requests.end(),
            [](const Request& a, const Request& b) { return a.request_id < b.request_id; });

  const std::int64_t steps = step_count(horizon);
  const int workers = options.workers;

  // Ephemeris per satellite, computed in chunks.
  std::vector<Propagator> props;
  props.reserve(sats.size());
  for (const auto& s : sats) props.emplace_back(s.tle);
  std::vector<std::vector<EphemerisSample>> eph(sats.size(), std::vector<EphemerisSample>(static_cast<std::size_t>(steps)));
  std::vector<std::vector<StepGeometry>> geom(sats.size(), std::vector<StepGeometry>(static_cast<std::size_t>(steps)));
  constexpr std::int64_t kChunk = 256;
  const std::int64_t chunks = (steps + kChunk - 1) / kChunk;
  detail::parallel_for(sats.size() * static_cast<std::size_t>(chunks), workers, [&](std::size_t task) {
    const std::size_t si = task / static_cast<std::size_t>(chunks);
    const std::int64_t c = static_cast<std::int64_t>(task % static_cast<std::size_t>(chunks));
    for (std::int64_t k = c * kChunk; k < std::min(steps, (c + 1) * kChunk); ++k) {
      const auto idx = static_cast<std::size_t>(k);
      eph[si][idx] = props[si].propagate(add_seconds(horizon.start, static_cast<double>(k) * horizon.granularity_s));
      const auto& e = eph[si][idx];
      geom[si][idx] = {normalized(e.position_ecef),
                       std::cos(max_central_angle(e.subsatellite.altitude, sats[si].spec.max_off_nadir))};
    }
  });
  for (std::size_t si = 0; si < sats.size(); ++si) {
    const double alt = eph[si].front().subsatellite.altitude;
    if (alt < kMinLeoAltitude || alt > kMaxLeoAltitude) {
      throw ValidationError("satellite " + std::to_string(sats[si].spec.norad_id) + " altitude " +
                            std::to_string(alt) + " km is outside the supported LEO band");
    }
  }

  const std::size_t n_req = table.requests.size();
  std::vector<TaskOutput> outputs(sats.size() * n_req);
  detail::parallel_for(outputs.size(), workers, [&](std::size_t task) {
    const std::size_t si = task / n_req;
    const Request& req = table.requests[task % n_req];
    const SatelliteSpec& spec = sats[si].spec;
    const double mem = memory_usage(spec);
    TaskOutput& out = outputs[task];

    auto make_attempt = [&](const StepEval& ev, int strip, StereoRole role, int pass_id,
                            const GeodeticPoint& target) {
      const EphemerisSample& e = eph[si][static_cast<std::size_t>(ev.step)];
      LocalAttempt la;
      la.step = ev.step;
      Attempt& a = la.a;
      a.request_id = req.request_id;
      a.satellite = spec.norad_id;
      a.strip_index = strip;
      a.stereo_role = role;
      a.pass_id = pass_id;
      a.t_clock = e.time;
      a.acq_duration = acquisition_duration(req, spec, e);
      a.los = line_of_sight(e, target);
      a.off_nadir = ev.off_nadir;
      a.sun_elev = ev.sun;
      a.cloud_cover = ev.cloud;
      a.memory_mb = mem;
      a.target = target;
      a.criteria = {req.area, ev.off_nadir, ev.sun, ev.cloud, static_cast<double>(req.priority),
                    req.price, static_cast<double>(req.age), req.uncertainty};
      out.attempts.push_back(la);
      return out.attempts.size() - 1;
    };

    for (int strip = 0; strip < req.n_strips; ++strip) {
      const GeodeticPoint target = strip_center(req, strip, table.swath_reference_km);
      const Vec3 t_ecef = geodetic_to_ecef(target);
      const Vec3 t_dir = normalized(t_ecef);
      const Vec3 up = up_vector(target);

      // Passes: maximal runs of geometrically visible steps.
      std::vector<std::vector<StepEval>> passes;
      bool in_pass = false;
      for (std::int64_t k = 0; k < steps; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        bool visible = false;
        double theta = 0.0;
        if (dot(geom[si][idx].dir, t_dir) >= geom[si][idx].cos_max_central) {
          const EphemerisSample& e = eph[si][idx];
          theta = off_nadir_angle(e, target);
          visible = theta <= spec.max_off_nadir && dot(e.position_ecef - t_ecef, up) > 0.0;
        }
        if (!visible) {
          in_pass = false;
          continue;
        }
        if (!in_pass) passes.emplace_back();
        in_pass = true;
        const EphemerisSample& e = eph[si][idx];
        StepEval ev{k, theta, sun_elevation(target, e.time), clouds.cloud_cover(target, e.time), false};
        ev.gates = ev.sun >= options.min_sun_elevation && ev.cloud <= options.max_cloud_cover;
        passes.back().push_back(ev);
      }

      for (std::size_t pid = 0; pid < passes.size(); ++pid) {
        const auto& pass = passes[pid];
        const int pass_id = static_cast<int>(pid);
        if (!req.stereo) {
          // Windows: runs of gate-passing steps.
          std::size_t i = 0;
          while (i < pass.size()) {
            if (!pass[i].gates) {
              ++i;
              continue;
            }
            std::size_t j = i;
            while (j + 1 < pass.size() && pass[j + 1].gates && pass[j + 1].step == pass[j].step + 1) ++j;
            if (options.keep_all_steps) {
              for (std::size_t k = i; k <= j; ++k) make_attempt(pass[k], strip, StereoRole::kMono, pass_id, target);
            } else {
              std::size_t best = i;
              for (std::size_t k = i + 1; k <= j; ++k) {
                if (pass[k].off_nadir < pass[best].off_nadir) best = k;
              }
              make_attempt(pass[best], strip, StereoRole::kMono, pass_id, target);
            }
            i = j + 1;
          }
          continue;
        }

        // Stereo: valid (first, second) step pairs inside the pass.
        std::vector<std::size_t> ok;
        for (std::size_t k = 0; k < pass.size(); ++k) {
          if (pass[k].gates) ok.push_back(k);
        }
        std::vector<std::tuple<std::size_t, std::size_t, double>> valid;
        for (std::size_t a = 0; a < ok.size(); ++a) {
          for (std::size_t b = a + 1; b < ok.size(); ++b) {
            const auto& ea = eph[si][static_cast<std::size_t>(pass[ok[a]].step)];
            const auto& eb = eph[si][static_cast<std::size_t>(pass[ok[b]].step)];
            const double conv = convergence_angle(target, ea.position_ecef, eb.position_ecef);
            if (conv >= options.stereo_min_convergence && conv <= options.stereo_max_convergence) {
              valid.emplace_back(ok[a], ok[b], conv);
            }
          }
        }
        if (valid.empty()) continue;
        if (options.keep_all_steps) {
          std::map<std::size_t, std::size_t> firsts, seconds;
          for (const auto& [f, s, c] : valid) {
            firsts.emplace(f, 0);
            seconds.emplace(s, 0);
          }
          for (auto& [k, idx] : firsts) idx = make_attempt(pass[k], 0, StereoRole::kStereoFirst, pass_id, target);
          for (auto& [k, idx] : seconds) idx = make_attempt(pass[k], 0, StereoRole::kStereoSecond, pass_id, target);
          for (const auto& [f, s, c] : valid) out.pairs.emplace_back(firsts[f], seconds[s], c);
        } else {
          std::size_t first = std::get<0>(valid.front());
          for (const auto& v : valid) {
            if (pass[std::get<0>(v)].off_nadir < pass[first].off_nadir) first = std::get<0>(v);
          }
          std::size_t second = 0;
          double conv = 0.0;
          bool have = false;
          for (const auto& [f, s, c] : valid) {
            if (f != first) continue;
            if (!have || pass[s].off_nadir < pass[second].off_nadir) {
              second = s;
              conv = c;
              have = true;
            }
          }
          const auto fi = make_attempt(pass[first], 0, StereoRole::kStereoFirst, pass_id, target);
          const auto sj = make_attempt(pass[second], 0, StereoRole::kStereoSecond, pass_id, target);
          out.pairs.emplace_back(fi, sj, conv);
        }
      }
    }
  });

  // Deterministic merge.
  struct Ref {
    std::size_t task;
    std::size_t local;
  };
  std::vector<Ref> refs;
  for (std::size_t t = 0; t < outputs.size(); ++t) {
    for (std::size_t l = 0; l < outputs[t].attempts.size(); ++l) refs.push_back({t, l});
  }
  auto key = [&](const Ref& r) {
    const Attempt& a = outputs[r.task].attempts[r.local].a;
    return std::make_tuple(a.t_clock, a.satellite, a.request_id, a.strip_index, static_cast<int>(a.stereo_role));
  };
  std::sort(refs.begin(), refs.end(), [&](const Ref& x, const Ref& y) { return key(x) < key(y); });
  std::vector<std::vector<int>> global(outputs.size());
  for (std::size_t t = 0; t < outputs.size(); ++t) global[t].resize(outputs[t].attempts.size());
  table.attempts.reserve(refs.size());
  for (std::size_t g = 0; g < refs.size(); ++g) {
    Attempt a = outputs[refs[g].task].attempts[refs[g].local].a;
    a.attempt_id = static_cast<int>(g);
    global[refs[g].task][refs[g].local] = static_cast<int>(g);
    table.attempts.push_back(a);
  }
  for (std::size_t t = 0; t < outputs.size(); ++t) {
    for (const auto& [f, s, c] : outputs[t].pairs) {
      table.stereo_pairs.push_back({global[t][f], global[t][s], c});
    }
  }
  std::sort(table.stereo_pairs.begin(), table.stereo_pairs.end(),
            [](const StereoPair& a, const StereoPair& b) { return std::tie(a.first, a.second) < std::tie(b.first, b.second); });
  return table;
}

}  // namespace eos
