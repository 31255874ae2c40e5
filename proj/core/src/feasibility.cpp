// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "eos/errors.hpp"
#include "eos/solve.hpp"
#include "solve_common.hpp"

namespace eos {

std::string_view to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::kGreedy: return "greedy";
    case SolveMethod::kElpa: return "elpa";
    case SolveMethod::kExact: return "exact";
    case SolveMethod::kExternal: return "external";
  }
  return "greedy";
}

SolveMethod parse_solve_method(std::string_view text) {
  if (text == "greedy") return SolveMethod::kGreedy;
  if (text == "elpa" || text == "dag") return SolveMethod::kElpa;
  if (text == "exact") return SolveMethod::kExact;
  if (text == "external") return SolveMethod::kExternal;
  throw ParseError("unknown solve method '" + std::string(text) + "'");
}

std::string_view to_string(RowKind k) {
  switch (k) {
    case RowKind::kNone: return "none";
    case RowKind::kG: return "g";
    case RowKind::kB: return "b";
    case RowKind::kA: return "a";
    case RowKind::kM: return "m";
  }
  return "none";
}

FeasibilityResult check_feasible(const ProblemInstance& inst, std::span<const int> x) {
  std::vector<char> on(static_cast<std::size_t>(inst.n), 0);
  for (int c : x) {
    if (c < 0 || c >= inst.n) throw ValidationError("selected column " + std::to_string(c) + " out of range");
    if (on[static_cast<std::size_t>(c)]) throw ValidationError("column " + std::to_string(c) + " selected twice");
    on[static_cast<std::size_t>(c)] = 1;
  }
  auto sel = [&](int c) { return on[static_cast<std::size_t>(c)] != 0; };
  for (std::size_t k = 0; k < inst.g_rows.size(); ++k) {
    const auto& r = inst.g_rows[k];
    const auto cnt = std::count_if(r.columns.begin(), r.columns.end(), sel);
    if (cnt > r.bound) return {false, RowKind::kG, static_cast<int>(k)};
  }
  for (std::size_t k = 0; k < inst.b_rows.size(); ++k) {
    const auto& r = inst.b_rows[k];
    const auto cnt = std::count_if(r.columns.begin(), r.columns.end(), sel);
    if (cnt > r.cap) return {false, RowKind::kB, static_cast<int>(k)};
  }
  for (std::size_t k = 0; k < inst.a_rows.size(); ++k) {
    if (sel(inst.a_rows[k].plus) != sel(inst.a_rows[k].minus)) return {false, RowKind::kA, static_cast<int>(k)};
  }
  for (std::size_t k = 0; k < inst.m_rows.size(); ++k) {
    const auto& r = inst.m_rows[k];
    double sum = 0.0;
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
      if (sel(r.columns[i])) sum += r.memory[i];
    }
    if (sum > r.cap * (1.0 + detail::kMemoryTolerance)) return {false, RowKind::kM, static_cast<int>(k)};
  }
  return {};
}

double objective(const ProblemInstance& inst, std::span<const int> x) {
  double s = 0.0;
  for (int c : x) s += inst.scores.at(static_cast<std::size_t>(c));
  return s;
}

ReplayResult replay_timeline(const ProblemInstance& inst, std::span<const int> x) {
  std::unordered_map<int, std::vector<int>> by_sat;
  for (int c : x) by_sat[inst.attempt(c).satellite].push_back(c);
  std::vector<int> sats;
  for (const auto& [s, cols] : by_sat) sats.push_back(s);
  std::sort(sats.begin(), sats.end());
  ReplayResult out;
  for (int s : sats) {
    auto& cols = by_sat[s];
    std::sort(cols.begin(), cols.end(), [&](int a, int b) {
      const auto ta = inst.attempt(a).t_clock, tb = inst.attempt(b).t_clock;
      return ta != tb ? ta < tb : a < b;
    });
    const SatelliteSpec& spec = inst.table->spec_for(s);
    for (std::size_t k = 1; k < cols.size(); ++k) {
      const Attempt& prev = inst.attempt(cols[k - 1]);
      const Attempt& next = inst.attempt(cols[k]);
      // The platform finishes prev, then slews; it must be pointing at next
      // strictly before next starts.
      const double ready = prev.acq_duration + maneuver_time(prev, next, spec);
      if (ready >= seconds_between(prev.t_clock, next.t_clock)) {
        if (out.overlaps == 0) {
          out.first_from = cols[k - 1];
          out.first_to = cols[k];
        }
        ++out.overlaps;
      }
    }
  }
  return out;
}

namespace detail {

RowIndex::RowIndex(const ProblemInstance& inst) {
  const auto n = static_cast<std::size_t>(inst.n);
  g.resize(n);
  b.assign(n, -1);
  a.assign(n, -1);
  m.assign(n, -1);
  mem.assign(n, 0.0);
  for (std::size_t k = 0; k < inst.g_rows.size(); ++k) {
    for (int c : inst.g_rows[k].columns) g[static_cast<std::size_t>(c)].push_back(static_cast<int>(k));
  }
  for (std::size_t k = 0; k < inst.b_rows.size(); ++k) {
    for (int c : inst.b_rows[k].columns) b[static_cast<std::size_t>(c)] = static_cast<int>(k);
  }
  for (std::size_t k = inst.a_rows.size(); k-- > 0;) {
    a[static_cast<std::size_t>(inst.a_rows[k].plus)] = static_cast<int>(k);
    a[static_cast<std::size_t>(inst.a_rows[k].minus)] = static_cast<int>(k);
  }
  for (std::size_t k = 0; k < inst.m_rows.size(); ++k) {
    const auto& r = inst.m_rows[k];
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
      m[static_cast<std::size_t>(r.columns[i])] = static_cast<int>(k);
      mem[static_cast<std::size_t>(r.columns[i])] = r.memory[i];
    }
  }
}

RowTracker::RowTracker(const ProblemInstance& inst, const RowIndex& idx)
    : inst_(inst),
      idx_(idx),
      g_count_(inst.g_rows.size(), 0),
      b_count_(inst.b_rows.size(), 0),
      m_sum_(inst.m_rows.size(), 0.0) {}

bool RowTracker::can_add(int col) const {
  const auto c = static_cast<std::size_t>(col);
  for (int r : idx_.g[c]) {
    if (g_count_[static_cast<std::size_t>(r)] + 1 > inst_.g_rows[static_cast<std::size_t>(r)].bound) return false;
  }
  if (const int r = idx_.b[c]; r >= 0) {
    if (b_count_[static_cast<std::size_t>(r)] + 1 > inst_.b_rows[static_cast<std::size_t>(r)].cap) return false;
  }
  if (const int r = idx_.m[c]; r >= 0) {
    const double cap = inst_.m_rows[static_cast<std::size_t>(r)].cap;
    if (m_sum_[static_cast<std::size_t>(r)] + idx_.mem[c] > cap * (1.0 + kMemoryTolerance)) return false;
  }
  return true;
}

bool RowTracker::can_add_all(const std::vector<int>& cols) {
  std::size_t k = 0;
  bool ok = true;
  for (; k < cols.size(); ++k) {
    if (!can_add(cols[k])) {
      ok = false;
      break;
    }
    add(cols[k]);
  }
  while (k-- > 0) remove(cols[k]);
  return ok;
}

void RowTracker::add(int col) {
  const auto c = static_cast<std::size_t>(col);
  for (int r : idx_.g[c]) ++g_count_[static_cast<std::size_t>(r)];
  if (idx_.b[c] >= 0) ++b_count_[static_cast<std::size_t>(idx_.b[c])];
  if (idx_.m[c] >= 0) m_sum_[static_cast<std::size_t>(idx_.m[c])] += idx_.mem[c];
}

void RowTracker::remove(int col) {
  const auto c = static_cast<std::size_t>(col);
  for (int r : idx_.g[c]) --g_count_[static_cast<std::size_t>(r)];
  if (idx_.b[c] >= 0) --b_count_[static_cast<std::size_t>(idx_.b[c])];
  if (idx_.m[c] >= 0) m_sum_[static_cast<std::size_t>(idx_.m[c])] -= idx_.mem[c];
}

std::vector<std::vector<int>> stereo_units(const ProblemInstance& inst) {
  std::vector<int> parent(static_cast<std::size_t>(inst.n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& r : inst.a_rows) {
    const int a = find(r.plus), b = find(r.minus);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<std::vector<int>> units;
  std::vector<int> unit_of(static_cast<std::size_t>(inst.n), -1);
  for (int c = 0; c < inst.n; ++c) {
    const int root = find(c);
    int& u = unit_of[static_cast<std::size_t>(root)];
    if (u < 0) {
      u = static_cast<int>(units.size());
      units.emplace_back();
    }
    units[static_cast<std::size_t>(u)].push_back(c);
  }
  return units;
}

Schedule finish(const ProblemInstance& inst, SolveMethod method, std::vector<int> selected,
                std::chrono::steady_clock::time_point started) {
  std::sort(selected.begin(), selected.end());
  Schedule s;
  s.method = method;
  s.selected = std::move(selected);
  s.objective = objective(inst, s.selected);
  s.feasible = check_feasible(inst, s.selected).feasible;
  if (!s.feasible) throw std::logic_error("solver produced an infeasible schedule");
  s.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return s;
}

}  // namespace detail
}  // namespace eos
