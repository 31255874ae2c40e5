// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <numeric>
#include <random>

#include "eos/solve.hpp"
#include "solve_common.hpp"

namespace eos {

Schedule solve_greedy(const ProblemInstance& inst, std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  std::vector<int> order(static_cast<std::size_t>(inst.n));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng() % i)]);
  }
  const detail::RowIndex idx(inst);
  detail::RowTracker tracker(inst, idx);
  std::vector<char> on(static_cast<std::size_t>(inst.n), 0);
  for (int c : order) {
    if (tracker.can_add(c)) {
      tracker.add(c);
      on[static_cast<std::size_t>(c)] = 1;
    }
  }
  // Unpaired stereo halves are dropped afterwards; removal never breaks a
  // capacity row. Repeat because a column may sit in several a_rows.
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : inst.a_rows) {
      auto& p = on[static_cast<std::size_t>(r.plus)];
      auto& m = on[static_cast<std::size_t>(r.minus)];
      if (p != m) {
        p = 0;
        m = 0;
        changed = true;
      }
    }
  }
  std::vector<int> selected;
  for (int c = 0; c < inst.n; ++c) {
    if (on[static_cast<std::size_t>(c)]) selected.push_back(c);
  }
  return detail::finish(inst, SolveMethod::kGreedy, std::move(selected), started);
}

}  // namespace eos
