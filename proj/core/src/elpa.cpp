// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

// Extended longest path: per-satellite longest path over the maneuver DAG,
// a repair loop for the side constraints, a greedy fill, then ejection moves.

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

#include "eos/solve.hpp"
#include "solve_common.hpp"

namespace eos {
namespace {

constexpr double kNone = -std::numeric_limits<double>::infinity();

class Elpa {
 public:
  explicit Elpa(const ProblemInstance& inst) : inst_(inst), n_(static_cast<std::size_t>(inst.n)) {
    pos_.assign(n_, 0);
    sat_of_.assign(n_, 0);
    forbidden_.assign(n_, 0);
    on_.assign(n_, 0);
    stamp_.assign(n_, 0);
    conflicts_.resize(n_);
    std::unordered_map<int, std::size_t> sat_index;
    for (int c = 0; c < inst.n; ++c) {
      const int sat = inst.attempt(c).satellite;
      auto [it, fresh] = sat_index.emplace(sat, orders_.size());
      if (fresh) orders_.emplace_back();
      orders_[it->second].push_back(c);
      sat_of_[static_cast<std::size_t>(c)] = it->second;
    }
    for (auto& ord : orders_) {
      std::sort(ord.begin(), ord.end(), [&](int a, int b) {
        const auto ta = inst.attempt(a).t_clock, tb = inst.attempt(b).t_clock;
        return ta != tb ? ta < tb : a < b;
      });
      for (std::size_t p = 0; p < ord.size(); ++p) pos_[static_cast<std::size_t>(ord[p])] = p;
    }
    for (const auto& row : inst.g_rows) {
      for (int a : row.columns) {
        for (int b : row.columns) {
          if (a != b) conflicts_[static_cast<std::size_t>(a)].push_back(b);
        }
      }
    }
  }

  std::vector<int> run() {
    for (std::size_t s = 0; s < orders_.size(); ++s) relax(s);
    repair();
    fill();
    improve();
    std::vector<int> out;
    for (int c = 0; c < inst_.n; ++c) {
      if (on_[static_cast<std::size_t>(c)]) out.push_back(c);
    }
    return out;
  }

 private:
  bool allowed(int c) const {
    return !forbidden_[static_cast<std::size_t>(c)] && inst_.scores[static_cast<std::size_t>(c)] > 0.0;
  }

  // Replaces satellite s's selection with its longest path.
  void relax(std::size_t s) {
    const auto& ord = orders_[s];
    const std::size_t k = ord.size();
    std::vector<double> best(k, kNone);
    std::vector<int> pred(k, -1);
    std::vector<double> pm_val(k + 1, kNone);  // best over positions < p
    std::vector<int> pm_arg(k + 1, -1);
    for (std::size_t p = 0; p < k; ++p) {
      const int c = ord[p];
      pm_val[p + 1] = pm_val[p];
      pm_arg[p + 1] = pm_arg[p];
      on_[static_cast<std::size_t>(c)] = 0;
      if (!allowed(c)) continue;
      ++tick_;
      std::size_t e = p;
      for (int d : conflicts_[static_cast<std::size_t>(c)]) {
        const std::size_t q = pos_[static_cast<std::size_t>(d)];
        if (sat_of_[static_cast<std::size_t>(d)] != s) continue;
        stamp_[static_cast<std::size_t>(d)] = tick_;
        if (q < p) e = std::min(e, q);
      }
      double val = 0.0;
      int arg = -1;
      if (pm_val[e] > val) {
        val = pm_val[e];
        arg = pm_arg[e];
      }
      for (std::size_t q = e; q < p; ++q) {
        const int d = ord[q];
        if (best[q] > val && stamp_[static_cast<std::size_t>(d)] != tick_) {
          val = best[q];
          arg = static_cast<int>(q);
        }
      }
      best[p] = inst_.scores[static_cast<std::size_t>(c)] + val;
      pred[p] = arg;
      if (best[p] > pm_val[p + 1]) {
        pm_val[p + 1] = best[p];
        pm_arg[p + 1] = static_cast<int>(p);
      }
    }
    for (int p = pm_arg[k]; p >= 0; p = pred[static_cast<std::size_t>(p)]) {
      on_[static_cast<std::size_t>(ord[static_cast<std::size_t>(p)])] = 1;
    }
  }

  // Column to drop from the first pass over violated rows, or -1.
  int worst_violator() const {
    int worst = -1;
    auto consider = [&](int c) {
      if (!on_[static_cast<std::size_t>(c)]) return;
      if (worst < 0) {
        worst = c;
        return;
      }
      const double sc = inst_.scores[static_cast<std::size_t>(c)];
      const double sw = inst_.scores[static_cast<std::size_t>(worst)];
      if (sc < sw || (sc == sw && c > worst)) worst = c;
    };
    auto count = [&](const std::vector<int>& cols) {
      int n = 0;
      for (int c : cols) n += on_[static_cast<std::size_t>(c)];
      return n;
    };
    for (const auto& r : inst_.b_rows) {
      if (count(r.columns) > r.cap) {
        for (int c : r.columns) consider(c);
      }
    }
    for (const auto& r : inst_.a_rows) {
      if (on_[static_cast<std::size_t>(r.plus)] != on_[static_cast<std::size_t>(r.minus)]) {
        consider(r.plus);
        consider(r.minus);
      }
    }
    for (const auto& r : inst_.m_rows) {
      double sum = 0.0;
      for (std::size_t i = 0; i < r.columns.size(); ++i) {
        if (on_[static_cast<std::size_t>(r.columns[i])]) sum += r.memory[i];
      }
      if (sum > r.cap * (1.0 + detail::kMemoryTolerance)) {
        for (int c : r.columns) consider(c);
      }
    }
    for (const auto& r : inst_.g_rows) {
      if (count(r.columns) > r.bound) {
        for (int c : r.columns) consider(c);
      }
    }
    return worst;
  }

  void repair() {
    for (int c = worst_violator(); c >= 0; c = worst_violator()) {
      forbidden_[static_cast<std::size_t>(c)] = 1;
      relax(sat_of_[static_cast<std::size_t>(c)]);
    }
  }

  void fill() {
    const detail::RowIndex idx(inst_);
    detail::RowTracker tracker(inst_, idx);
    for (int c = 0; c < inst_.n; ++c) {
      if (on_[static_cast<std::size_t>(c)]) tracker.add(c);
    }
    struct Unit {
      std::vector<int> cols;
      double score;
    };
    std::vector<Unit> units;
    for (auto& cols : detail::stereo_units(inst_)) {
      double s = 0.0;
      bool any_on = false;
      for (int c : cols) {
        s += inst_.scores[static_cast<std::size_t>(c)];
        any_on = any_on || on_[static_cast<std::size_t>(c)];
      }
      if (!any_on && s > 0.0) units.push_back({std::move(cols), s});
    }
    std::stable_sort(units.begin(), units.end(), [](const Unit& a, const Unit& b) { return a.score > b.score; });
    for (const auto& u : units) {
      if (!tracker.can_add_all(u.cols)) continue;
      for (int c : u.cols) {
        tracker.add(c);
        on_[static_cast<std::size_t>(c)] = 1;
      }
    }
  }

  // Ejection moves: insert an unselected unit, evict the selected units that
  // block it, refill around the evicted ones and keep the change when the
  // objective grows. Never lowers the objective.
  void improve() {
    const detail::RowIndex idx(inst_);
    detail::RowTracker tracker(inst_, idx);
    units_ = detail::stereo_units(inst_);
    unit_of_.assign(n_, 0);
    unit_score_.assign(units_.size(), 0.0);
    for (std::size_t u = 0; u < units_.size(); ++u) {
      for (int c : units_[u]) {
        unit_of_[static_cast<std::size_t>(c)] = u;
        unit_score_[u] += inst_.scores[static_cast<std::size_t>(c)];
      }
    }
    for (int c = 0; c < inst_.n; ++c) {
      if (on_[static_cast<std::size_t>(c)]) tracker.add(c);
    }
    std::vector<std::size_t> order;
    for (std::size_t u = 0; u < units_.size(); ++u) {
      if (unit_score_[u] > 0.0) order.push_back(u);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return unit_score_[a] > unit_score_[b]; });

    for (int pass = 0; pass < kMaxPasses; ++pass) {
      bool changed = false;
      for (std::size_t u : order) {
        if (on_[static_cast<std::size_t>(units_[u].front())]) continue;
        bool memory = false;
        const std::vector<std::size_t> evict = blockers(idx, u, &memory);
        double delta = unit_score_[u];
        for (std::size_t e : evict) delta -= unit_score_[e];
        for (std::size_t e : evict) set_unit(tracker, e, false);
        if (!tracker.can_add_all(units_[u])) {
          for (std::size_t e : evict) set_unit(tracker, e, true);
          continue;
        }
        set_unit(tracker, u, true);
        std::vector<std::size_t> added;
        for (std::size_t v : refill_candidates(idx, evict, u, memory)) {
          if (on_[static_cast<std::size_t>(units_[v].front())] || !tracker.can_add_all(units_[v])) continue;
          set_unit(tracker, v, true);
          added.push_back(v);
          delta += unit_score_[v];
        }
        if (delta > kGain) {
          changed = true;
          continue;
        }
        for (std::size_t v : added) set_unit(tracker, v, false);
        set_unit(tracker, u, false);
        for (std::size_t e : evict) set_unit(tracker, e, true);
      }
      if (!changed) break;
    }
  }

  void set_unit(detail::RowTracker& tracker, std::size_t u, bool on) {
    for (int c : units_[u]) {
      on_[static_cast<std::size_t>(c)] = on ? 1 : 0;
      if (on) {
        tracker.add(c);
      } else {
        tracker.remove(c);
      }
    }
  }

  // Selected units to evict so that unit u fits, cheapest first per row.
  std::vector<std::size_t> blockers(const detail::RowIndex& idx, std::size_t u, bool* memory) const {
    std::set<std::size_t> evict;
    auto live = [&](int c) {
      return on_[static_cast<std::size_t>(c)] && evict.count(unit_of_[static_cast<std::size_t>(c)]) == 0;
    };
    auto by_score = [&](std::vector<std::size_t>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      std::stable_sort(v.begin(), v.end(), [&](std::size_t a, std::size_t b) {
        return unit_score_[a] < unit_score_[b];
      });
    };
    // Makes room for `need` units of weight in a row whose live members are cols.
    auto shed = [&](const std::vector<int>& cols, const std::vector<double>* weight, double need) {
      std::vector<std::size_t> cand;
      for (int c : cols) {
        if (live(c)) cand.push_back(unit_of_[static_cast<std::size_t>(c)]);
      }
      by_score(cand);
      for (std::size_t v : cand) {
        if (need <= 0.0) break;
        evict.insert(v);
        for (std::size_t k = 0; k < cols.size(); ++k) {
          if (unit_of_[static_cast<std::size_t>(cols[k])] == v && on_[static_cast<std::size_t>(cols[k])]) {
            need -= weight ? (*weight)[k] : 1.0;
          }
        }
      }
    };
    for (int c : units_[u]) {
      for (int r : idx.g[static_cast<std::size_t>(c)]) {
        const auto& row = inst_.g_rows[static_cast<std::size_t>(r)];
        double used = 0.0;
        for (int d : row.columns) used += live(d) || unit_of_[static_cast<std::size_t>(d)] == u ? 1.0 : 0.0;
        shed(row.columns, nullptr, used - row.bound);
      }
    }
    for (int c : units_[u]) {
      const int r = idx.b[static_cast<std::size_t>(c)];
      if (r < 0) continue;
      const auto& row = inst_.b_rows[static_cast<std::size_t>(r)];
      double used = 0.0;
      for (int d : row.columns) used += live(d) || unit_of_[static_cast<std::size_t>(d)] == u ? 1.0 : 0.0;
      shed(row.columns, nullptr, used - row.cap);
    }
    for (int c : units_[u]) {
      const int r = idx.m[static_cast<std::size_t>(c)];
      if (r < 0) continue;
      const auto& row = inst_.m_rows[static_cast<std::size_t>(r)];
      double used = 0.0;
      for (std::size_t k = 0; k < row.columns.size(); ++k) {
        const int d = row.columns[k];
        if (live(d) || unit_of_[static_cast<std::size_t>(d)] == u) used += row.memory[k];
      }
      if (used > row.cap * (1.0 + detail::kMemoryTolerance)) {
        *memory = true;
        shed(row.columns, &row.memory, used - row.cap * (1.0 + detail::kMemoryTolerance));
      }
    }
    return {evict.begin(), evict.end()};
  }

  // Unselected units sharing a row with an evicted unit, best first.
  std::vector<std::size_t> refill_candidates(const detail::RowIndex& idx, const std::vector<std::size_t>& evict,
                                             std::size_t u, bool memory) const {
    std::vector<std::size_t> out;
    auto take = [&](const std::vector<int>& cols) {
      for (int d : cols) {
        const std::size_t v = unit_of_[static_cast<std::size_t>(d)];
        if (v != u && unit_score_[v] > 0.0 && !on_[static_cast<std::size_t>(d)]) out.push_back(v);
      }
    };
    for (std::size_t e : evict) {
      for (int c : units_[e]) {
        for (int r : idx.g[static_cast<std::size_t>(c)]) take(inst_.g_rows[static_cast<std::size_t>(r)].columns);
        const int b = idx.b[static_cast<std::size_t>(c)];
        if (b >= 0) take(inst_.b_rows[static_cast<std::size_t>(b)].columns);
        const int m = idx.m[static_cast<std::size_t>(c)];
        if (memory && m >= 0) take(inst_.m_rows[static_cast<std::size_t>(m)].columns);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
      return unit_score_[a] > unit_score_[b];
    });
    return out;
  }

  static constexpr int kMaxPasses = 8;
  static constexpr double kGain = 1e-12;

  const ProblemInstance& inst_;
  std::size_t n_;
  std::vector<std::vector<int>> units_;
  std::vector<std::size_t> unit_of_;
  std::vector<double> unit_score_;
  std::vector<std::vector<int>> orders_;
  std::vector<std::size_t> pos_;
  std::vector<std::size_t> sat_of_;
  std::vector<char> forbidden_;
  std::vector<char> on_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t tick_ = 0;
  std::vector<std::vector<int>> conflicts_;
};

}  // namespace

Schedule solve_elpa(const ProblemInstance& instance) {
  const auto started = std::chrono::steady_clock::now();
  Elpa elpa(instance);
  return detail::finish(instance, SolveMethod::kElpa, elpa.run(), started);
}

}  // namespace eos
