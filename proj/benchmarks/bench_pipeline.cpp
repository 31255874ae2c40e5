// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

// Stage timings for the default two-satellite scenario.

#include <benchmark/benchmark.h>

#include "eos/pipeline.hpp"
#include "eos/problem.hpp"
#include "eos/scoring.hpp"
#include "eos/sgp4.hpp"
#include "eos/solve.hpp"

namespace {

eos::RunConfig config_for(int n_requests) {
  eos::RunConfig c;
  c.n_requests = n_requests;
  c.reproducible = true;
  return c;
}

void BM_Sgp4Propagate(benchmark::State& state) {
  const auto sats = eos::load_satellites(eos::RunConfig{});
  const eos::Sgp4 sgp4(sats.front().tle.elements);
  double minutes = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sgp4.propagate(minutes));
    minutes += 1.0 / 6.0;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Sgp4Propagate);

void BM_CustomerDb(benchmark::State& state) {
  const auto c = config_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eos::run_customer_db(c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CustomerDb)->Arg(300)->Arg(3000);

void BM_Scenario(benchmark::State& state) {
  auto c = config_for(static_cast<int>(state.range(0)));
  c.workers = 1;
  const auto db = eos::run_customer_db(c);
  for (auto _ : state) benchmark::DoNotOptimize(eos::run_scenario(c, db));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Scenario)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

// Scored instances are built once per (size, simplify) and reused.
eos::ProblemInstance scored_instance(int n_requests, bool simplify) {
  const auto c = config_for(n_requests);
  eos::Bundle b = eos::make_bundle(*eos::run_scenario(c, eos::run_customer_db(c)).table, simplify);
  if (b.instance.original_count() > 0) {
    eos::attach_scores(b.instance, eos::score(c.scoring, eos::criteria_matrix(b.instance), c.preferences));
  }
  return b.instance;
}

void BM_Electre(benchmark::State& state) {
  const auto inst = scored_instance(static_cast<int>(state.range(0)), true);
  const auto m = eos::criteria_matrix(inst);
  const auto prefs = eos::default_preferences();
  for (auto _ : state) benchmark::DoNotOptimize(eos::score_electre3(m, prefs));
}
BENCHMARK(BM_Electre)->Arg(300)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Elpa(benchmark::State& state) {
  const auto inst = scored_instance(static_cast<int>(state.range(0)), true);
  for (auto _ : state) benchmark::DoNotOptimize(eos::solve_elpa(inst));
  state.counters["columns"] = inst.n;
}
BENCHMARK(BM_Elpa)->Arg(300)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Greedy(benchmark::State& state) {
  const auto inst = scored_instance(static_cast<int>(state.range(0)), false);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eos::solve_greedy(inst, seed++));
  state.counters["columns"] = inst.n;
}
BENCHMARK(BM_Greedy)->Arg(300)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Exact(benchmark::State& state) {
  const auto inst = scored_instance(300, false);
  for (auto _ : state) benchmark::DoNotOptimize(eos::solve_exact(inst, {30.0}));
  state.counters["columns"] = inst.n;
}
BENCHMARK(BM_Exact)->Unit(benchmark::kMillisecond);

}  // namespace

// The packaged benchmark_main archive is built with a mismatched LTO version.
BENCHMARK_MAIN();
