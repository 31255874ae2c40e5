// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "eos/errors.hpp"
#include "eos/pipeline.hpp"
#include "eos/scenario.hpp"
#include "support/fixtures.hpp"

namespace eos {
namespace {

class ConstantCloud final : public CloudProvider {
 public:
  explicit ConstantCloud(double v) : v_(v) {}
  double cloud_cover(const GeodeticPoint&, Instant) const override { return v_; }

 private:
  double v_;
};

EphemerisSample moving_at(double ground_speed) {
  EphemerisSample s;
  s.ground_speed = ground_speed;
  return s;
}

Request mono(double area, int n_strips = 1) {
  Request r;
  r.area = area;
  r.n_strips = n_strips;
  r.price = 1000.0;
  return r;
}

std::vector<SatelliteEntry> spot_pair() { return {eos::testing::spot_entry(0), eos::testing::spot_entry(1)}; }

// Table for the default example configuration, cached per mode.
const PerformanceTable& example_table(bool keep_all) {
  static std::map<bool, PerformanceTable> cache;
  auto it = cache.find(keep_all);
  if (it == cache.end()) {
    RunConfig config;
    const auto db = run_customer_db(config);
    ScenarioOptions options;
    options.keep_all_steps = keep_all;
    it = cache.emplace(keep_all, enumerate_attempts(db, load_satellites(config), config.horizon, config.clouds,
                                                    options))
             .first;
  }
  return it->second;
}

TEST(Scenario, AcquisitionDuration) {
  SatelliteSpec spec;
  EXPECT_DOUBLE_EQ(acquisition_duration(mono(49.0), spec, moving_at(7.0)), 1.0);
  EXPECT_NEAR(acquisition_duration(mono(2500.0), spec, moving_at(7.0)), 50.0 / 7.0, 1e-12);
  EXPECT_DOUBLE_EQ(acquisition_duration(mono(1.0), spec, moving_at(7.0)), 1.0);
  EXPECT_NEAR(acquisition_duration(mono(14400.0, 2), spec, moving_at(6.0)), 10.0, 1e-12);
  EXPECT_THROW(acquisition_duration(mono(100.0), spec, moving_at(0.0)), ValidationError);
}

TEST(Scenario, StripCount) {
  EXPECT_EQ(strip_count(553.0, 60.0), 1);
  EXPECT_EQ(strip_count(14400.0, 60.0), 2);
  EXPECT_EQ(strip_count(14401.0, 60.0), 3);
  EXPECT_EQ(strip_count(1.0, 60.0), 1);
  SatelliteSpec spec;
  spec.swath = 30.0;
  EXPECT_EQ(strip_count(mono(14400.0), spec), 4);
  EXPECT_THROW(strip_count(0.0, 60.0), ValidationError);
}

TEST(Scenario, MemoryUsage) {
  SatelliteSpec spec;
  // (3600e6 m^2 / 2.25 m^2) px * 2 B / 2^20.
  EXPECT_DOUBLE_EQ(memory_usage(spec), 3051.7578125);
  EXPECT_EQ(std::lround(memory_usage(spec)), 3052);
  SatelliteSpec coarse = spec;
  coarse.resolution *= 2.0;
  EXPECT_DOUBLE_EQ(memory_usage(coarse), memory_usage(spec) / 2.0);
  SatelliteSpec wide = spec;
  wide.swath *= 2.0;
  EXPECT_DOUBLE_EQ(memory_usage(wide), memory_usage(spec) * 4.0);
}

TEST(Scenario, HorizonValidation) {
  EXPECT_NO_THROW(validate(Horizon{make_instant(2024, 1, 1), 8.0, 10.0}));
  EXPECT_THROW(validate(Horizon{make_instant(2024, 1, 1), 0.0, 10.0}), ValidationError);
  EXPECT_THROW(validate(Horizon{make_instant(2024, 1, 1), 1.0, 0.5}), ValidationError);
  EXPECT_THROW(validate(Horizon{make_instant(2024, 1, 1), 3000.0, 1.0}), ValidationError);
  EXPECT_EQ(step_count(Horizon{make_instant(2024, 1, 1), 1.0, 10.0}), 361);
  EXPECT_EQ(horizon_end(Horizon{make_instant(2024, 1, 1), 1.5, 10.0}), make_instant(2024, 1, 1, 1, 30));
}

TEST(Scenario, StripCenters) {
  Request r = mono(14401.0, 3);
  r.location = {10.0, 20.0, 0.0};
  const GeodeticPoint mid = strip_center(r, 1, 60.0);
  EXPECT_NEAR(mid.latitude, 10.0, 1e-12);
  EXPECT_NEAR(great_circle_distance_km(strip_center(r, 0, 60.0), mid), 60.0, 0.1);
  EXPECT_NEAR(great_circle_distance_km(strip_center(r, 2, 60.0), mid), 60.0, 0.1);
  EXPECT_LT(strip_center(r, 0, 60.0).latitude, strip_center(r, 2, 60.0).latitude);
}

TEST(Scenario, SubsatelliteRequestIsSeenNearNadir) {
  const auto sat = eos::testing::spot_entry(0);
  const Propagator prop(sat.tle);
  // First daylit instant after epoch with the sun well up.
  Instant t = sat.tle.epoch;
  EphemerisSample s = prop.propagate(t);
  while (sun_elevation({s.subsatellite.latitude, s.subsatellite.longitude, 0.0}, t) < 40.0) {
    t = add_seconds(t, 60.0);
    s = prop.propagate(t);
  }
  Request r = mono(100.0);
  r.location = {s.subsatellite.latitude, s.subsatellite.longitude, 0.0};
  const std::vector<Request> db{r};
  const std::vector<SatelliteEntry> sats{sat};
  const Horizon h{add_seconds(t, -600.0), 20.0 / 60.0, 10.0};
  const PerformanceTable table = enumerate_attempts(db, sats, h, ConstantCloud(0.0));
  ASSERT_GE(table.attempts.size(), 1u);
  const auto best = std::min_element(table.attempts.begin(), table.attempts.end(),
                                     [](const Attempt& a, const Attempt& b) { return a.off_nadir < b.off_nadir; });
  EXPECT_LT(best->off_nadir, 5.0);
  EXPECT_NO_THROW(validate(table));

  // Forecast cloud 0.9 everywhere removes every attempt.
  EXPECT_TRUE(enumerate_attempts(db, sats, h, ConstantCloud(0.9)).attempts.empty());
  // A 0.6 forecast still passes the gate.
  EXPECT_FALSE(enumerate_attempts(db, sats, h, ConstantCloud(0.6)).attempts.empty());
}

TEST(Scenario, Preconditions) {
  const Horizon h{make_instant(2024, 10, 17, 9, 40), 1.0, 10.0};
  const std::vector<Request> db{mono(100.0)};
  EXPECT_THROW(enumerate_attempts({}, spot_pair(), h, ConstantCloud(0.0)), ValidationError);
  EXPECT_THROW(enumerate_attempts(db, {}, h, ConstantCloud(0.0)), ValidationError);
  // Far outside the TLE validity window.
  const Horizon late{make_instant(2025, 3, 1), 1.0, 10.0};
  EXPECT_THROW(enumerate_attempts(db, spot_pair(), late, ConstantCloud(0.0)), ValidationError);
}

TEST(Scenario, ExampleTableInvariants) {
  const PerformanceTable& t = example_table(false);
  ASSERT_FALSE(t.attempts.empty());
  EXPECT_NO_THROW(validate(t));
  const Instant end = horizon_end(t.horizon);
  for (const auto& a : t.attempts) {
    EXPECT_LE(a.off_nadir, 30.0);
    EXPECT_GE(a.sun_elev, 15.0);
    EXPECT_LE(a.cloud_cover, 0.60);
    EXPECT_GE(a.t_clock, t.horizon.start);
    EXPECT_LE(a.t_clock, end);
    EXPECT_GT(a.acq_duration, 0.0);
    EXPECT_GT(a.memory_mb, 0.0);
    EXPECT_NEAR(norm(a.los), 1.0, 1e-12);
    EXPECT_EQ(a.criteria[kOffNadir], a.off_nadir);
    EXPECT_EQ(a.criteria[kCloudCover], a.cloud_cover);
    EXPECT_EQ(a.criteria[kSunElevation], a.sun_elev);
  }
  for (const auto& p : t.stereo_pairs) {
    const Attempt& f = t.attempts[static_cast<std::size_t>(p.first)];
    const Attempt& s = t.attempts[static_cast<std::size_t>(p.second)];
    EXPECT_EQ(f.stereo_role, StereoRole::kStereoFirst);
    EXPECT_EQ(s.stereo_role, StereoRole::kStereoSecond);
    EXPECT_EQ(f.satellite, s.satellite);
    EXPECT_EQ(f.pass_id, s.pass_id);
    EXPECT_EQ(f.request_id, s.request_id);
    EXPECT_LT(f.t_clock, s.t_clock);
    EXPECT_GE(p.convergence_deg, 15.0);
    EXPECT_LE(p.convergence_deg, 20.0);
  }
  for (const auto& r : t.requests) {
    EXPECT_EQ(r.n_strips, r.stereo ? 1 : strip_count(r.area, t.swath_reference_km));
  }
}

TEST(Scenario, PerStepModeGivesHundredsOfAttempts) {
  const auto n_steps = example_table(true).attempts.size();
  EXPECT_GE(n_steps, 100u);
  EXPECT_LT(n_steps, 1000u);
  EXPECT_LT(example_table(false).attempts.size(), n_steps);
  EXPECT_NO_THROW(validate(example_table(true)));
}

// Each contiguous run of visible steps collapses to its minimum off-nadir
// step, earliest on ties.
TEST(Scenario, CollapsingInvariant) {
  const PerformanceTable& steps = example_table(true);
  const PerformanceTable& windows = example_table(false);
  using Key = std::tuple<int, int, int, int>;  // request, strip, satellite, pass
  std::map<Key, std::vector<const Attempt*>> runs;
  for (const auto& a : steps.attempts) {
    if (a.stereo_role != StereoRole::kMono) continue;
    runs[{a.request_id, a.strip_index, a.satellite, a.pass_id}].push_back(&a);
  }
  // Split each pass into runs of consecutive steps.
  std::vector<std::vector<const Attempt*>> windows_expected;
  for (auto& [key, list] : runs) {
    std::vector<const Attempt*> cur;
    for (const Attempt* a : list) {
      if (!cur.empty() && seconds_between(cur.back()->t_clock, a->t_clock) > steps.horizon.granularity_s + 1e-6) {
        windows_expected.push_back(cur);
        cur.clear();
      }
      cur.push_back(a);
    }
    if (!cur.empty()) windows_expected.push_back(cur);
  }
  int mono_windows = 0;
  for (const auto& a : windows.attempts) mono_windows += a.stereo_role == StereoRole::kMono;
  EXPECT_EQ(static_cast<std::size_t>(mono_windows), windows_expected.size());
  for (const auto& w : windows_expected) {
    const Attempt* best = w.front();
    for (const Attempt* a : w) {
      if (a->off_nadir < best->off_nadir) best = a;
    }
    const auto match = std::find_if(windows.attempts.begin(), windows.attempts.end(), [&](const Attempt& a) {
      return a.request_id == best->request_id && a.strip_index == best->strip_index &&
             a.satellite == best->satellite && a.t_clock == best->t_clock && a.stereo_role == StereoRole::kMono;
    });
    ASSERT_NE(match, windows.attempts.end());
    EXPECT_EQ(match->off_nadir, best->off_nadir);
  }
}

TEST(Scenario, IndependentOfWorkerCount) {
  RunConfig config;
  config.n_requests = 120;
  const auto db = run_customer_db(config);
  const auto sats = load_satellites(config);
  Horizon h = config.horizon;
  h.duration_hours = 3.0;
  for (bool keep_all : {false, true}) {
    ScenarioOptions one, many;
    one.workers = 1;
    many.workers = 7;
    one.keep_all_steps = many.keep_all_steps = keep_all;
    const PerformanceTable a = enumerate_attempts(db, sats, h, config.clouds, one);
    const PerformanceTable b = enumerate_attempts(db, sats, h, config.clouds, many);
    EXPECT_EQ(a.attempts, b.attempts);
    EXPECT_EQ(a.stereo_pairs, b.stereo_pairs);
  }
}

TEST(Scenario, ReferenceSwathIsTheNarrowest) {
  auto sats = spot_pair();
  sats[1].spec.swath = 20.0;
  Request r = mono(2500.0);
  r.location = {45.0, 5.0, 0.0};
  const std::vector<Request> db{r};
  const PerformanceTable t =
      enumerate_attempts(db, sats, Horizon{sats[0].tle.epoch, 1.0, 10.0}, ConstantCloud(0.0));
  EXPECT_EQ(t.swath_reference_km, 20.0);
  EXPECT_EQ(t.requests[0].n_strips, 3);
}

TEST(Scenario, RoleNames) {
  for (StereoRole r : {StereoRole::kMono, StereoRole::kStereoFirst, StereoRole::kStereoSecond}) {
    EXPECT_EQ(parse_stereo_role(to_string(r)), r);
  }
  EXPECT_THROW(parse_stereo_role("triple"), ParseError);
  EXPECT_EQ(criterion_name(kCloudCover), "cloud_cover");
}

}  // namespace
}  // namespace eos
