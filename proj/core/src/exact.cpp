// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

// Depth-first branch and bound over stereo units (a single column, or the
// columns tied by a_rows), split into independent components.

#include <algorithm>
#include <numeric>

#include "eos/errors.hpp"
#include "eos/solve.hpp"
#include "solve_common.hpp"

namespace eos {
namespace {

using Clock = std::chrono::steady_clock;

struct Unit {
  std::vector<int> cols;
  double score = 0.0;
};

class BranchAndBound {
 public:
  BranchAndBound(const ProblemInstance& inst, const detail::RowIndex& idx, std::vector<Unit> units,
                 Clock::time_point deadline)
      : inst_(inst), idx_(idx), tracker_(inst, idx), units_(std::move(units)), deadline_(deadline) {
    std::stable_sort(units_.begin(), units_.end(), [](const Unit& a, const Unit& b) { return a.score > b.score; });
    for (std::size_t u = 0; u < units_.size(); ++u) {
      for (int c : units_[u].cols) bound_cols_.push_back({inst.scores[static_cast<std::size_t>(c)], c, u});
    }
    std::stable_sort(bound_cols_.begin(), bound_cols_.end(),
                     [](const BoundCol& a, const BoundCol& b) { return a.score > b.score; });
    b_used_.assign(inst.b_rows.size(), 0);
    b_seen_.assign(inst.b_rows.size(), 0);
    chosen_.assign(units_.size(), 0);
    seed_incumbent();
  }

  // Returns false when the deadline interrupted the search.
  bool search() {
    dfs(0, 0.0);
    return !timed_out_;
  }

  std::vector<int> best_columns() const {
    std::vector<int> out;
    for (std::size_t u = 0; u < units_.size(); ++u) {
      if (best_[u]) out.insert(out.end(), units_[u].cols.begin(), units_[u].cols.end());
    }
    return out;
  }

 private:
  struct BoundCol {
    double score;
    int col;
    std::size_t unit;
  };

  // Greedy by unit score gives the first incumbent.
  void seed_incumbent() {
    double value = 0.0;
    for (std::size_t u = 0; u < units_.size(); ++u) {
      if (tracker_.can_add_all(units_[u].cols)) {
        add(u);
        value += units_[u].score;
      }
    }
    best_ = chosen_;
    best_value_ = value;
    for (std::size_t u = 0; u < units_.size(); ++u) {
      if (chosen_[u]) remove(u);
    }
  }

  void add(std::size_t u) {
    chosen_[u] = 1;
    for (int c : units_[u].cols) {
      tracker_.add(c);
      if (idx_.b[static_cast<std::size_t>(c)] >= 0) ++b_used_[static_cast<std::size_t>(idx_.b[static_cast<std::size_t>(c)])];
    }
  }

  void remove(std::size_t u) {
    chosen_[u] = 0;
    for (int c : units_[u].cols) {
      tracker_.remove(c);
      if (idx_.b[static_cast<std::size_t>(c)] >= 0) --b_used_[static_cast<std::size_t>(idx_.b[static_cast<std::size_t>(c)])];
    }
  }

  // Sum of the best remaining column scores that each request could still
  // take under its cap.
  double bound(std::size_t from) {
    double sum = 0.0;
    touched_.clear();
    for (const auto& bc : bound_cols_) {
      if (bc.unit < from) continue;
      const int r = idx_.b[static_cast<std::size_t>(bc.col)];
      if (r < 0) {
        sum += bc.score;
        continue;
      }
      const auto ri = static_cast<std::size_t>(r);
      if (b_seen_[ri] == 0) touched_.push_back(ri);
      if (b_used_[ri] + b_seen_[ri] < inst_.b_rows[ri].cap) {
        ++b_seen_[ri];
        sum += bc.score;
      }
    }
    for (auto r : touched_) b_seen_[r] = 0;
    return sum;
  }

  void dfs(std::size_t u, double value) {
    if (timed_out_) return;
    if ((++nodes_ & 0xFFF) == 0 && Clock::now() >= deadline_) {
      timed_out_ = true;
      return;
    }
    if (value > best_value_) {
      best_value_ = value;
      best_ = chosen_;
    }
    if (u == units_.size()) return;
    if (value + bound(u) <= best_value_) return;
    if (tracker_.can_add_all(units_[u].cols)) {
      add(u);
      dfs(u + 1, value + units_[u].score);
      remove(u);
    }
    dfs(u + 1, value);
  }

  const ProblemInstance& inst_;
  const detail::RowIndex& idx_;
  detail::RowTracker tracker_;
  std::vector<Unit> units_;
  Clock::time_point deadline_;
  std::vector<BoundCol> bound_cols_;
  std::vector<int> b_used_;
  std::vector<int> b_seen_;
  std::vector<std::size_t> touched_;
  std::vector<char> chosen_;
  std::vector<char> best_;
  double best_value_ = 0.0;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

// Components of the column graph linked by any shared row.
std::vector<std::vector<int>> components(const ProblemInstance& inst) {
  std::vector<int> parent(static_cast<std::size_t>(inst.n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };
  auto link = [&](const std::vector<int>& cols) {
    for (std::size_t i = 1; i < cols.size(); ++i) unite(cols[0], cols[i]);
  };
  for (const auto& r : inst.g_rows) link(r.columns);
  for (const auto& r : inst.b_rows) link(r.columns);
  for (const auto& r : inst.m_rows) link(r.columns);
  for (const auto& r : inst.a_rows) unite(r.plus, r.minus);
  std::vector<std::vector<int>> out;
  std::vector<int> comp_of(static_cast<std::size_t>(inst.n), -1);
  for (int c = 0; c < inst.n; ++c) {
    int& k = comp_of[static_cast<std::size_t>(find(c))];
    if (k < 0) {
      k = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(k)].push_back(c);
  }
  return out;
}

}  // namespace

Schedule solve_exact(const ProblemInstance& inst, const ExactOptions& options) {
  if (inst.simplified) {
    throw RefusedError("the exact engine needs pairwise maneuver rows; rebuild the scenario without simplify");
  }
  if (!(options.time_limit_s >= 0.0)) throw ValidationError("time limit must be >= 0");
  const auto started = Clock::now();
  const auto deadline =
      started + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.time_limit_s));
  const detail::RowIndex idx(inst);

  std::vector<int> unit_of(static_cast<std::size_t>(inst.n), -1);
  auto all_units = detail::stereo_units(inst);
  for (std::size_t u = 0; u < all_units.size(); ++u) {
    for (int c : all_units[u]) unit_of[static_cast<std::size_t>(c)] = static_cast<int>(u);
  }

  std::vector<int> selected;
  bool optimal = true;
  for (const auto& comp : components(inst)) {
    std::vector<Unit> units;
    for (int c : comp) {
      const auto u = static_cast<std::size_t>(unit_of[static_cast<std::size_t>(c)]);
      if (all_units[u].front() != c) continue;  // visit each unit once, at its lowest column
      Unit unit{all_units[u], 0.0};
      for (int x : unit.cols) unit.score += inst.scores[static_cast<std::size_t>(x)];
      if (unit.score > 0.0) units.push_back(std::move(unit));
    }
    if (units.empty()) continue;
    BranchAndBound bb(inst, idx, std::move(units), deadline);
    optimal = bb.search() && optimal;
    const auto cols = bb.best_columns();
    selected.insert(selected.end(), cols.begin(), cols.end());
  }
  Schedule s = detail::finish(inst, SolveMethod::kExact, std::move(selected), started);
  s.optimal = optimal;
  return s;
}

}  // namespace eos
