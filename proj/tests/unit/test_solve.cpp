// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "eos/errors.hpp"
#include "eos/solve.hpp"
#include "support/fixtures.hpp"
#include "support/hand_table.hpp"

namespace eos {
namespace {

using eos::testing::HandTable;

std::vector<Schedule> all_engines(const ProblemInstance& inst, std::uint64_t seed) {
  std::vector<Schedule> out{solve_greedy(inst, seed), solve_elpa(inst)};
  if (!inst.simplified) out.push_back(solve_exact(inst));
  return out;
}

// Same instance with column k standing for the old column perm[k].
ProblemInstance permuted(const ProblemInstance& inst, const std::vector<int>& perm) {
  std::vector<int> new_of(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_of[static_cast<std::size_t>(perm[k])] = static_cast<int>(k);
  auto map_cols = [&](std::vector<int>& cols) {
    for (int& c : cols) c = new_of[static_cast<std::size_t>(c)];
  };
  ProblemInstance out = inst;
  for (std::size_t k = 0; k < perm.size(); ++k) {
    out.scores[k] = inst.scores[static_cast<std::size_t>(perm[k])];
    out.column_attempt[k] = inst.column_attempt[static_cast<std::size_t>(perm[k])];
  }
  out.copy_map.clear();
  for (auto [copy, orig] : inst.copy_map) out.copy_map.emplace(new_of[copy], new_of[orig]);
  for (auto& r : out.g_rows) {
    map_cols(r.columns);
    std::sort(r.columns.begin(), r.columns.end());
  }
  for (auto& r : out.b_rows) {
    map_cols(r.columns);
    std::sort(r.columns.begin(), r.columns.end());
  }
  for (auto& r : out.a_rows) {
    r.plus = new_of[r.plus];
    r.minus = new_of[r.minus];
  }
  for (auto& r : out.m_rows) {
    std::vector<std::pair<int, double>> cm;
    for (std::size_t k = 0; k < r.columns.size(); ++k) cm.emplace_back(new_of[r.columns[k]], r.memory[k]);
    std::sort(cm.begin(), cm.end());
    r.columns.clear();
    r.memory.clear();
    for (auto [c, m] : cm) {
      r.columns.push_back(c);
      r.memory.push_back(m);
    }
  }
  return out;
}

TEST(Solve, MethodNames) {
  for (auto m : {SolveMethod::kGreedy, SolveMethod::kElpa, SolveMethod::kExact, SolveMethod::kExternal}) {
    EXPECT_EQ(parse_solve_method(to_string(m)), m);
  }
  EXPECT_THROW(parse_solve_method("glpk"), ParseError);
}

TEST(Solve, CheckFeasibleExamples) {
  HandTable h;
  const int a = h.attempt(h.request(), 0, 0.0);
  const int b = h.attempt(h.request(), 1, 30.0);
  const int r = h.request(true);
  const int f = h.attempt(r, 200, 0.0, 1.0, 0, StereoRole::kStereoFirst);
  const int s = h.attempt(r, 290, 0.0, 1.0, 0, StereoRole::kStereoSecond);
  h.pair(f, s);
  const ProblemInstance inst = assemble(h.shared(), false);

  EXPECT_TRUE(check_feasible(inst, std::vector<int>{}).feasible);

  const auto g = check_feasible(inst, std::vector<int>{a, b});
  EXPECT_FALSE(g.feasible);
  EXPECT_EQ(g.kind, RowKind::kG);
  EXPECT_EQ(g.row, 0);
  EXPECT_EQ(to_string(g.kind), "g");

  const auto half = check_feasible(inst, std::vector<int>{a, f});
  EXPECT_FALSE(half.feasible);
  EXPECT_EQ(half.kind, RowKind::kA);
  EXPECT_EQ(half.row, 0);

  EXPECT_TRUE(check_feasible(inst, std::vector<int>{b, f, s}).feasible);
  EXPECT_THROW(check_feasible(inst, std::vector<int>{4}), ValidationError);
  EXPECT_THROW(check_feasible(inst, std::vector<int>{-1}), ValidationError);
  EXPECT_THROW(check_feasible(inst, std::vector<int>{a, a}), ValidationError);
}

TEST(Solve, NothingBindingSelectsAll) {
  HandTable h;
  for (int k = 0; k < 6; ++k) h.attempt(h.request(), 200.0 * k, 5.0 * k);
  ProblemInstance inst = assemble(h.shared(), false);
  std::mt19937_64 rng(2);
  eos::testing::random_scores(inst, rng);
  for (const auto& s : all_engines(inst, 9)) {
    EXPECT_EQ(s.selected.size(), 6u) << to_string(s.method);
    EXPECT_TRUE(s.feasible);
    EXPECT_NEAR(s.objective, std::accumulate(inst.scores.begin(), inst.scores.end(), 0.0), 1e-9);
  }
}

TEST(Solve, GreedyDeterministic) {
  std::mt19937_64 rng(3);
  ProblemInstance inst = assemble(std::make_shared<PerformanceTable>(eos::testing::random_table(rng, {})), false);
  eos::testing::random_scores(inst, rng);
  for (std::uint64_t seed : {0ULL, 1ULL, 77ULL}) {
    const Schedule a = solve_greedy(inst, seed);
    const Schedule b = solve_greedy(inst, seed);
    EXPECT_EQ(a.selected, b.selected);
    EXPECT_EQ(a.objective, b.objective);
  }
  const Schedule e1 = solve_elpa(inst), e2 = solve_elpa(inst);
  EXPECT_EQ(e1.selected, e2.selected);
  const Schedule x1 = solve_exact(inst), x2 = solve_exact(inst);
  EXPECT_EQ(x1.selected, x2.selected);
}

TEST(SolveProperty, GreedyNeverBeatsExact) {
  for (int inst_seed = 0; inst_seed < 30; ++inst_seed) {
    std::mt19937_64 rng(7000 + inst_seed);
    ProblemInstance inst = assemble(std::make_shared<PerformanceTable>(eos::testing::random_table(rng, {})), false);
    eos::testing::random_scores(inst, rng);
    const Schedule exact = solve_exact(inst);
    ASSERT_TRUE(exact.optimal);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Schedule g = solve_greedy(inst, seed);
      ASSERT_TRUE(check_feasible(inst, g.selected).feasible);
      ASSERT_LE(g.objective, exact.objective + 1e-9) << "instance " << inst_seed << " seed " << seed;
    }
  }
}

TEST(SolveProperty, EveryScheduleFeasibleAndConsistent) {
  for (int seed = 0; seed < 150; ++seed) {
    std::mt19937_64 rng(8000 + seed);
    eos::testing::GenParams gp;
    gp.window_s = eos::testing::uniform(rng, 100, 900);
    auto table = std::make_shared<PerformanceTable>(eos::testing::random_table(rng, gp));
    for (bool simplify : {false, true}) {
      ProblemInstance inst = assemble(table, simplify);
      eos::testing::random_scores(inst, rng);
      for (const auto& s : all_engines(inst, static_cast<std::uint64_t>(seed))) {
        ASSERT_TRUE(s.feasible);
        ASSERT_TRUE(check_feasible(inst, s.selected).feasible) << to_string(s.method) << " seed " << seed;
        ASSERT_TRUE(std::is_sorted(s.selected.begin(), s.selected.end()));
        ASSERT_NEAR(s.objective, objective(inst, s.selected), 1e-9);
        ASSERT_EQ(replay_timeline(inst, s.selected).overlaps, 0);
        if (!simplify) ASSERT_TRUE(eos::testing::simulate_feasible(inst, s.selected));
      }
    }
  }
}

TEST(SolveProperty, ExactMatchesBruteForce) {
  for (int seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(9000 + seed);
    eos::testing::GenParams gp;
    gp.max_columns = 16;
    gp.window_s = eos::testing::uniform(rng, 60, 400);
    ProblemInstance inst = assemble(std::make_shared<PerformanceTable>(eos::testing::random_table(rng, gp)), false);
    eos::testing::random_scores(inst, rng);
    const Schedule s = solve_exact(inst);
    EXPECT_TRUE(s.optimal);
    EXPECT_DOUBLE_EQ(s.objective, eos::testing::BruteForce(inst).optimum()) << "seed " << seed;
  }
}

TEST(Solve, ElpaEqualScoreChain) {
  HandTable h;
  for (int k = 0; k < 7; ++k) h.attempt(h.request(), 30.0 * k, k % 2 ? 10.0 : -10.0);
  ProblemInstance inst = assemble(h.shared(), true);
  std::fill(inst.scores.begin(), inst.scores.end(), 1.0);
  const Schedule s = solve_elpa(inst);
  EXPECT_EQ(s.selected, (std::vector<int>{0, 1, 2, 3, 4, 5, 6}));
  EXPECT_DOUBLE_EQ(s.objective, 7.0);
}

TEST(Solve, ElpaMemoryForOneImage) {
  HandTable h;
  h.spec().memory_capacity = memory_usage(h.spec());
  for (int k = 0; k < 4; ++k) h.attempt(h.request(), 100.0 * k, 0.0);
  ProblemInstance inst = assemble(h.shared(), true);
  inst.scores = {0.3, 0.9, 0.9, 0.5};
  const Schedule s = solve_elpa(inst);
  EXPECT_EQ(s.selected, std::vector<int>{1});
  EXPECT_DOUBLE_EQ(s.objective, 0.9);
}

TEST(Solve, ElpaMatchesChainOptimum) {
  for (int seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(10000 + seed);
    const ProblemInstance inst = eos::testing::chain_instance(rng, eos::testing::uniform_int(rng, 4, 18));
    EXPECT_NEAR(solve_elpa(inst).objective, eos::testing::BruteForce(inst).optimum(), 1e-9) << "seed " << seed;
  }
}

TEST(Solve, ExactExamples) {
  HandTable h;
  h.attempt(h.request(), 0, 0.0);
  h.attempt(h.request(), 1, 30.0);
  ProblemInstance inst = assemble(h.shared(), false);

  const Schedule zero = solve_exact(inst);
  EXPECT_DOUBLE_EQ(zero.objective, 0.0);
  EXPECT_TRUE(zero.feasible);
  EXPECT_TRUE(zero.optimal);

  inst.scores = {5.0, 3.0};
  EXPECT_EQ(solve_exact(inst).selected, std::vector<int>{0});
  inst.scores = {3.0, 5.0};
  EXPECT_EQ(solve_exact(inst).selected, std::vector<int>{1});

  const ProblemInstance simplified = assemble(h.shared(), true);
  EXPECT_THROW(solve_exact(simplified), RefusedError);
  EXPECT_THROW(solve_exact(inst, {-1.0}), ValidationError);
}

TEST(Solve, ExactPermutationInvariant) {
  for (int seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(11000 + seed);
    ProblemInstance inst = assemble(std::make_shared<PerformanceTable>(eos::testing::random_table(rng, {})), false);
    eos::testing::random_scores(inst, rng);
    std::vector<int> perm(static_cast<std::size_t>(inst.n));
    std::iota(perm.begin(), perm.end(), 0);
    // Originals and copies are shuffled separately so copies stay at the end.
    const auto originals = perm.begin() + inst.original_count();
    std::shuffle(perm.begin(), originals, rng);
    std::shuffle(originals, perm.end(), rng);
    const ProblemInstance p = permuted(inst, perm);
    ASSERT_NO_THROW(validate(p));
    EXPECT_NEAR(solve_exact(p).objective, solve_exact(inst).objective, 1e-9) << "seed " << seed;
  }
}

TEST(Solve, ExactTimeLimit) {
  std::mt19937_64 rng(12);
  eos::testing::GenParams gp;
  gp.max_columns = 400;
  gp.window_s = 1500;
  ProblemInstance inst = assemble(std::make_shared<PerformanceTable>(eos::testing::random_table(rng, gp)), false);
  eos::testing::random_scores(inst, rng);
  const Schedule s = solve_exact(inst, {0.0});
  EXPECT_FALSE(s.optimal);
  EXPECT_TRUE(s.feasible);
  EXPECT_TRUE(check_feasible(inst, s.selected).feasible);
}

TEST(Solve, ReplayTimeline) {
  HandTable h;
  h.attempt(h.request(), 0, 0.0);
  h.attempt(h.request(), 10, 30.0);
  h.attempt(h.request(), 60, 0.0);
  ProblemInstance inst = assemble(h.shared(), false);
  EXPECT_EQ(replay_timeline(inst, std::vector<int>{0, 2}).overlaps, 0);
  const ReplayResult bad = replay_timeline(inst, std::vector<int>{0, 1, 2});
  EXPECT_EQ(bad.overlaps, 1);
  EXPECT_EQ(bad.first_from, 0);
  EXPECT_EQ(bad.first_to, 1);
  EXPECT_EQ(replay_timeline(inst, std::vector<int>{}).overlaps, 0);
}

TEST(Solve, ScheduleJsonRoundTrip) {
  std::mt19937_64 rng(13);
  ProblemInstance inst = assemble(std::make_shared<PerformanceTable>(eos::testing::random_table(rng, {})), false);
  eos::testing::random_scores(inst, rng);
  const Schedule s = solve_exact(inst);
  const std::string text = schedule_to_json(inst, s, "bundle-1");
  std::string id;
  const Schedule back = schedule_from_json(text, &id);
  EXPECT_EQ(id, "bundle-1");
  EXPECT_EQ(back.method, s.method);
  EXPECT_EQ(back.selected, s.selected);
  EXPECT_EQ(back.objective, s.objective);
  EXPECT_EQ(back.runtime_s, s.runtime_s);
  EXPECT_EQ(back.feasible, s.feasible);
  EXPECT_EQ(back.optimal, s.optimal);
  EXPECT_EQ(schedule_to_json(inst, back, "bundle-1"), text);
  EXPECT_THROW(schedule_from_json("{}"), ParseError);
}

}  // namespace
}  // namespace eos
