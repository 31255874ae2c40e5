// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <utility>

#include "eos/errors.hpp"
#include "eos/problem.hpp"
#include "eos/solve.hpp"
#include "support/fixtures.hpp"
#include "support/hand_table.hpp"

namespace eos {
namespace {

using eos::testing::HandTable;

TEST(Problem, ManeuverTimeExamples) {
  HandTable h;
  const int r = h.request();
  const int a = h.attempt(r, 0, 0.0);
  const int b = h.attempt(r, 100, 0.0);
  const int c = h.attempt(r, 200, 30.0);
  const auto& t = h.table();
  const SatelliteSpec& spec = h.spec();
  EXPECT_DOUBLE_EQ(maneuver_time(t.attempts[a], t.attempts[b], spec), 0.0);
  EXPECT_NEAR(maneuver_time(t.attempts[a], t.attempts[c], spec), 20.0, 1e-9);
  EXPECT_DOUBLE_EQ(maneuver_time(t.attempts[c], t.attempts[a], spec), maneuver_time(t.attempts[a], t.attempts[c], spec));

  const Maneuver m = maneuver(t.attempts[a], t.attempts[c], spec);
  EXPECT_NEAR(m.slew_angle, 30.0, 1e-9);
  EXPECT_NEAR(m.t_man, m.slew_angle / spec.rotation_speed, 1e-12);
  EXPECT_EQ(m.from_attempt, a);
  EXPECT_EQ(m.to_attempt, c);
}

TEST(Problem, ManeuverAcrossSatellitesThrows) {
  HandTable h(2);
  const int r = h.request();
  const int a = h.attempt(r, 0, 0.0, 1.0, 0);
  const int b = h.attempt(r, 10, 0.0, 1.0, 1);
  EXPECT_THROW(maneuver_time(h.at(a), h.at(b), h.spec(0)), ValidationError);
}

TEST(Problem, GRowsPairExamples) {
  {
    HandTable h;
    const int a = h.attempt(h.request(), 0, 0.0);
    const int b = h.attempt(h.request(), 1, 30.0);
    const auto rows = build_g_rows(h.table(), false);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].columns, (std::vector<int>{a, b}));
    EXPECT_EQ(rows[0].bound, 1);
  }
  {
    HandTable h;
    h.attempt(h.request(), 0, 0.0);
    h.attempt(h.request(), 60, 30.0);
    EXPECT_TRUE(build_g_rows(h.table(), false).empty());
  }
  {
    // 20 s slew plus 1.5 s acquisition against a 21 s gap.
    HandTable h;
    h.attempt(h.request(), 0, 0.0, 1.5);
    h.attempt(h.request(), 21, 30.0);
    EXPECT_EQ(build_g_rows(h.table(), false).size(), 1u);
    EXPECT_TRUE(maneuver_conflict(h.at(0), h.at(1), h.spec()));
  }
  {
    // Different satellites never conflict.
    HandTable h(2);
    h.attempt(h.request(), 0, 0.0, 1.0, 0);
    h.attempt(h.request(), 1, 30.0, 1.0, 1);
    EXPECT_TRUE(build_g_rows(h.table(), false).empty());
  }
}

TEST(Problem, GRowsThreeWayConflict) {
  HandTable h;
  for (int k = 0; k < 3; ++k) h.attempt(h.request(), k, 30.0 * k);
  // Hand enumeration: gaps 1, 1, 2 s against slews of 20, 20, 40 s.
  for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {0, 2}}) {
    EXPECT_TRUE(maneuver_conflict(h.at(i), h.at(j), h.spec()));
  }
  const auto pairwise = build_g_rows(h.table(), false);
  ASSERT_EQ(pairwise.size(), 3u);
  std::set<std::vector<int>> sets;
  for (const auto& r : pairwise) sets.insert(r.columns);
  EXPECT_EQ(sets, (std::set<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}}));

  const auto grouped = build_g_rows(h.table(), true);
  ASSERT_EQ(grouped.size(), 1u);
  EXPECT_EQ(grouped[0].columns, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(grouped[0].bound, 1);
}

TEST(Problem, GroupsSplitAtFeasibleGaps) {
  HandTable h;
  h.attempt(h.request(), 0, 0.0);
  h.attempt(h.request(), 1, 30.0);
  h.attempt(h.request(), 500, 0.0);
  h.attempt(h.request(), 501, 30.0);
  const auto grouped = build_g_rows(h.table(), true);
  ASSERT_EQ(grouped.size(), 2u);
  EXPECT_EQ(grouped[0].columns, (std::vector<int>{0, 1}));
  EXPECT_EQ(grouped[1].columns, (std::vector<int>{2, 3}));
}

TEST(Problem, BRowCaps) {
  HandTable h;
  const int plain = h.request();
  const int stereo = h.request(true);
  const int strips = h.request(false, 3);
  for (int k = 0; k < 5; ++k) h.attempt(plain, 100.0 * k, 0.0);
  const int f = h.attempt(stereo, 600, 0.0, 1.0, 0, StereoRole::kStereoFirst);
  const int s = h.attempt(stereo, 700, 0.0, 1.0, 0, StereoRole::kStereoSecond);
  h.pair(f, s);
  for (int k = 0; k < 3; ++k) h.attempt(strips, 800.0 + 100.0 * k, 0.0, 1.0, 0, StereoRole::kMono, k);

  const auto rows = build_b_rows(h.table());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].request_id, plain);
  EXPECT_EQ(rows[0].columns, (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_EQ(rows[0].cap, 1);
  EXPECT_EQ(rows[1].request_id, stereo);
  EXPECT_EQ(rows[1].cap, 2);
  EXPECT_EQ(rows[2].request_id, strips);
  EXPECT_EQ(rows[2].cap, 3);
}

TEST(Problem, SingleStereoPair) {
  HandTable h;
  const int r = h.request(true);
  const int f = h.attempt(r, 0, 0.0, 1.0, 0, StereoRole::kStereoFirst);
  const int s = h.attempt(r, 90, 0.0, 1.0, 0, StereoRole::kStereoSecond);
  h.pair(f, s);
  const ColumnLayout layout = build_a_rows(h.table());
  ASSERT_EQ(layout.a_rows.size(), 1u);
  EXPECT_EQ(layout.a_rows[0], (ARow{f, s}));
  EXPECT_TRUE(layout.copy_map.empty());

  const ProblemInstance inst = assemble(h.shared(), false);
  const std::vector<int> only_first{f};
  const auto res = check_feasible(inst, only_first);
  EXPECT_FALSE(res.feasible);
  EXPECT_EQ(res.kind, RowKind::kA);
  const std::vector<int> both{f, s};
  EXPECT_TRUE(check_feasible(inst, both).feasible);
}

TEST(Problem, CopyRuleThreePairs) {
  HandTable h;
  const int r = h.request(true);
  const int f = h.attempt(r, 0, 0.0, 1.0, 0, StereoRole::kStereoFirst);
  std::vector<int> seconds;
  for (int k = 0; k < 3; ++k) seconds.push_back(h.attempt(r, 90.0 + 10.0 * k, 0.0, 1.0, 0, StereoRole::kStereoSecond));
  for (int s : seconds) h.pair(f, s);

  const ProblemInstance inst = assemble(h.shared(), false);
  EXPECT_EQ(inst.n, 6);
  EXPECT_EQ(inst.original_count(), 4);
  ASSERT_EQ(inst.copy_map.size(), 2u);
  for (const auto& [copy, orig] : inst.copy_map) {
    EXPECT_EQ(orig, f);
    EXPECT_EQ(inst.column_attempt[static_cast<std::size_t>(copy)], f);
  }
  ASSERT_EQ(inst.a_rows.size(), 3u);
  std::set<int> plus;
  for (const auto& a : inst.a_rows) plus.insert(a.plus);
  EXPECT_EQ(plus.size(), 3u);  // each pair has its own first column

  // All copies share the one b_row of the request, so cap 2 binds across
  // copies: at most one pair can be chosen.
  ASSERT_EQ(inst.b_rows.size(), 1u);
  EXPECT_EQ(inst.b_rows[0].columns.size(), 6u);
  EXPECT_EQ(inst.b_rows[0].cap, 2);
  ASSERT_EQ(inst.m_rows.size(), 1u);
  EXPECT_EQ(inst.m_rows[0].columns.size(), 6u);

  const std::vector<int> two_pairs{inst.a_rows[0].plus, inst.a_rows[0].minus, inst.a_rows[1].plus,
                                   inst.a_rows[1].minus};
  std::vector<int> sorted = two_pairs;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_FALSE(check_feasible(inst, sorted).feasible);
}

TEST(Problem, UnpairedStereoDropped) {
  HandTable h;
  const int r = h.request(true);
  h.attempt(r, 0, 0.0, 1.0, 0, StereoRole::kStereoFirst);
  h.attempt(h.request(), 50, 0.0);
  const ProblemInstance inst = assemble(h.shared(), false);
  EXPECT_EQ(inst.n, 1);
  EXPECT_EQ(inst.column_attempt, (std::vector<int>{1}));
  EXPECT_TRUE(inst.a_rows.empty());
}

TEST(Problem, MemoryRows) {
  {
    HandTable h;
    h.spec().memory_capacity = 3.0 * memory_usage(h.spec());
    for (int k = 0; k < 5; ++k) h.attempt(h.request(), 100.0 * k, 0.0);
    ProblemInstance inst = assemble(h.shared(), false);
    ASSERT_EQ(inst.m_rows.size(), 1u);
    EXPECT_DOUBLE_EQ(inst.m_rows[0].cap, 3.0 * memory_usage(h.spec()));
    std::fill(inst.scores.begin(), inst.scores.end(), 1.0);
    EXPECT_DOUBLE_EQ(eos::testing::BruteForce(inst).optimum(), 3.0);
    const std::vector<int> four{0, 1, 2, 3};
    const auto res = check_feasible(inst, four);
    EXPECT_FALSE(res.feasible);
    EXPECT_EQ(res.kind, RowKind::kM);
  }
  {
    HandTable h;
    h.spec().memory_capacity = 0.0;
    for (int k = 0; k < 3; ++k) h.attempt(h.request(), 100.0 * k, 0.0);
    ProblemInstance inst = assemble(h.shared(), false);
    std::fill(inst.scores.begin(), inst.scores.end(), 1.0);
    EXPECT_DOUBLE_EQ(eos::testing::BruteForce(inst).optimum(), 0.0);
  }
  {
    HandTable h(2);
    h.attempt(h.request(), 0, 0.0, 1.0, 0);
    h.attempt(h.request(), 10, 0.0, 1.0, 1);
    h.attempt(h.request(), 20, 0.0, 1.0, 0);
    const auto rows = build_m_rows(h.table());
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].satellite, h.norad(0));
    EXPECT_EQ(rows[0].columns, (std::vector<int>{0, 2}));
    EXPECT_EQ(rows[1].satellite, h.norad(1));
    EXPECT_EQ(rows[1].columns, (std::vector<int>{1}));
  }
}

TEST(Problem, AssembleEmptyAndSingle) {
  HandTable empty;
  const ProblemInstance e = assemble(empty.shared(), true);
  EXPECT_EQ(e.n, 0);
  EXPECT_EQ(constraint_count(e), 0u);

  HandTable one;
  one.attempt(one.request(), 0, 0.0);
  const ProblemInstance s = assemble(one.shared(), false);
  EXPECT_EQ(s.n, 1);
  EXPECT_TRUE(s.g_rows.empty());
  EXPECT_TRUE(s.a_rows.empty());
  EXPECT_EQ(s.b_rows.size(), 1u);
  EXPECT_EQ(s.m_rows.size(), 1u);
  EXPECT_EQ(s.scores, std::vector<double>{0.0});

  EXPECT_THROW(assemble(nullptr, false), ValidationError);
}

TEST(Problem, ValidateRejectsBrokenRows) {
  HandTable h;
  h.attempt(h.request(), 0, 0.0);
  h.attempt(h.request(), 1, 30.0);
  const ProblemInstance good = assemble(h.shared(), false);
  EXPECT_NO_THROW(validate(good));

  ProblemInstance bad = good;
  bad.g_rows[0].columns.push_back(5);
  EXPECT_THROW(validate(bad), ValidationError);

  bad = good;
  bad.g_rows[0].columns = {0, 1, 1};
  EXPECT_THROW(validate(bad), ValidationError);  // pairwise rows have two members

  bad = good;
  bad.b_rows[1].columns.push_back(0);
  EXPECT_THROW(validate(bad), ValidationError);

  bad = good;
  bad.b_rows.pop_back();
  EXPECT_THROW(validate(bad), ValidationError);

  bad = good;
  bad.scores.pop_back();
  EXPECT_THROW(validate(bad), ValidationError);

  bad = good;
  bad.a_rows.push_back({0, 1});  // mono attempts cannot form a stereo pair
  EXPECT_THROW(validate(bad), ValidationError);
}

// ---- properties on random instances ---------------------------------------

TEST(ProblemProperty, FeasibilityOracleAgreement) {
  int feasible_seen = 0;
  int infeasible_seen = 0;
  for (int seed = 0; seed < 150; ++seed) {
    std::mt19937_64 rng(300 + seed);
    eos::testing::GenParams gp;
    gp.max_columns = 18;
    gp.window_s = eos::testing::uniform(rng, 100, 600);
    const ProblemInstance inst = assemble(std::make_shared<PerformanceTable>(eos::testing::random_table(rng, gp)), false);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<int> x;
      const double density = eos::testing::uniform(rng, 0.0, 0.4);
      for (int c = 0; c < inst.n; ++c) {
        if (eos::testing::uniform(rng, 0, 1) < density) x.push_back(c);
      }
      const bool rows = check_feasible(inst, x).feasible;
      const bool sim = eos::testing::simulate_feasible(inst, x);
      ASSERT_EQ(rows, sim) << "seed " << seed << " trial " << trial;
      (rows ? feasible_seen : infeasible_seen)++;
    }
  }
  EXPECT_GT(feasible_seen, 500);
  EXPECT_GT(infeasible_seen, 500);
}

TEST(ProblemProperty, GRowsEqualBruteForcePairs) {
  for (int seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(900 + seed);
    eos::testing::GenParams gp;
    gp.window_s = eos::testing::uniform(rng, 60, 900);
    const ProblemInstance inst = assemble(std::make_shared<PerformanceTable>(eos::testing::random_table(rng, gp)), false);
    std::set<std::pair<int, int>> expected;
    for (int i = 0; i < inst.n; ++i) {
      for (int j = i + 1; j < inst.n; ++j) {
        const Attempt& a = inst.attempt(i);
        const Attempt& b = inst.attempt(j);
        if (a.satellite != b.satellite) continue;
        const bool forward = a.t_clock <= b.t_clock;
        const Attempt& from = forward ? a : b;
        const Attempt& to = forward ? b : a;
        const double rate = inst.table->spec_for(a.satellite).rotation_speed;
        const double need = angle_between(from.los, to.los) * kRadToDeg / rate + from.acq_duration;
        if (need >= seconds_between(from.t_clock, to.t_clock)) expected.emplace(i, j);
      }
    }
    std::set<std::pair<int, int>> got;
    for (const auto& r : inst.g_rows) {
      ASSERT_EQ(r.columns.size(), 2u);
      EXPECT_TRUE(got.emplace(r.columns[0], r.columns[1]).second) << "duplicate row";
    }
    ASSERT_EQ(got, expected) << "seed " << seed;
  }
}

TEST(ProblemProperty, SimplifiedRowsNeverExceedPairwise) {
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(1300 + seed);
    eos::testing::GenParams gp;
    gp.window_s = 120;
    auto table = std::make_shared<PerformanceTable>(eos::testing::random_table(rng, gp));
    const ProblemInstance pw = assemble(table, false);
    const ProblemInstance gr = assemble(table, true);
    EXPECT_LE(gr.g_rows.size(), pw.g_rows.size());
    // Every pairwise conflict stays covered by some group.
    for (const auto& r : pw.g_rows) {
      const bool covered = std::any_of(gr.g_rows.begin(), gr.g_rows.end(), [&](const GRow& g) {
        return std::includes(g.columns.begin(), g.columns.end(), r.columns.begin(), r.columns.end());
      });
      EXPECT_TRUE(covered) << "seed " << seed;
    }
  }
}

TEST(ProblemProperty, MonoInstancesHaveNoCopies) {
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(1700 + seed);
    eos::testing::GenParams gp;
    gp.stereo = false;
    auto table = std::make_shared<PerformanceTable>(eos::testing::random_table(rng, gp));
    ProblemInstance inst = assemble(table, false);
    EXPECT_TRUE(inst.copy_map.empty());
    EXPECT_TRUE(inst.a_rows.empty());
    EXPECT_EQ(inst.n, static_cast<int>(table->attempts.size()));
  }
}

TEST(ProblemProperty, ColumnMembership) {
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(2100 + seed);
    const ProblemInstance inst =
        assemble(std::make_shared<PerformanceTable>(eos::testing::random_table(rng, {})), seed % 2 == 0);
    std::vector<int> b(static_cast<std::size_t>(inst.n), 0), m(static_cast<std::size_t>(inst.n), 0);
    for (const auto& r : inst.b_rows) {
      for (int c : r.columns) ++b[static_cast<std::size_t>(c)];
    }
    for (const auto& r : inst.m_rows) {
      for (int c : r.columns) ++m[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < inst.n; ++c) {
      EXPECT_EQ(b[static_cast<std::size_t>(c)], 1);
      EXPECT_LE(m[static_cast<std::size_t>(c)], 1);
    }
    for (const auto& a : inst.a_rows) {
      EXPECT_EQ(inst.attempt(a.plus).stereo_role, StereoRole::kStereoFirst);
      EXPECT_EQ(inst.attempt(a.minus).stereo_role, StereoRole::kStereoSecond);
      EXPECT_EQ(inst.attempt(a.plus).request_id, inst.attempt(a.minus).request_id);
    }
  }
}

TEST(Problem, InstanceJsonRoundTrip) {
  std::mt19937_64 rng(4);
  auto table = std::make_shared<PerformanceTable>(eos::testing::random_table(rng, {}));
  ProblemInstance inst = assemble(table, false);
  eos::testing::random_scores(inst, rng);
  const std::string text = instance_to_json(inst, "abc123");
  std::string id;
  ProblemInstance back = instance_from_json(text, &id);
  EXPECT_EQ(id, "abc123");
  EXPECT_EQ(back.n, inst.n);
  EXPECT_EQ(back.scores, inst.scores);
  EXPECT_EQ(back.column_attempt, inst.column_attempt);
  EXPECT_EQ(back.copy_map, inst.copy_map);
  EXPECT_EQ(back.simplified, inst.simplified);
  EXPECT_EQ(back.g_rows, inst.g_rows);
  EXPECT_EQ(back.b_rows, inst.b_rows);
  EXPECT_EQ(back.a_rows, inst.a_rows);
  EXPECT_EQ(back.m_rows, inst.m_rows);
  EXPECT_EQ(instance_to_json(back, "abc123"), text);

  EXPECT_THROW(instance_from_json("{"), ParseError);
  EXPECT_THROW(instance_from_json(R"({"schema":"other","version":1})"), ParseError);
}

}  // namespace
}  // namespace eos
