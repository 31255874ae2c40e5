// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/problem.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "eos/errors.hpp"

namespace eos {
namespace {

constexpr double kMaxSlewDeg = 180.0;

struct SatColumns {
  int satellite = 0;
  const SatelliteSpec* spec = nullptr;
  std::vector<int> order;  // columns sorted by (t_clock, column)
};

std::vector<SatColumns> columns_by_satellite(const PerformanceTable& table, std::span<const int> column_attempt) {
  std::vector<SatColumns> out;
  std::unordered_map<int, std::size_t> index;
  for (const auto& s : table.satellites) {
    index.emplace(s.spec.norad_id, out.size());
    out.push_back({s.spec.norad_id, &s.spec, {}});
  }
  for (std::size_t c = 0; c < column_attempt.size(); ++c) {
    const Attempt& a = table.attempts.at(static_cast<std::size_t>(column_attempt[c]));
    auto it = index.find(a.satellite);
    if (it == index.end()) throw ValidationError("attempt on unknown satellite " + std::to_string(a.satellite));
    out[it->second].order.push_back(static_cast<int>(c));
  }
  for (auto& s : out) {
    std::sort(s.order.begin(), s.order.end(), [&](int x, int y) {
      const auto tx = table.attempts[static_cast<std::size_t>(column_attempt[static_cast<std::size_t>(x)])].t_clock;
      const auto ty = table.attempts[static_cast<std::size_t>(column_attempt[static_cast<std::size_t>(y)])].t_clock;
      return tx != ty ? tx < ty : x < y;
    });
  }
  return out;
}

std::vector<int> identity_columns(const PerformanceTable& table) {
  std::vector<int> cols(table.attempts.size());
  std::iota(cols.begin(), cols.end(), 0);
  return cols;
}

}  // namespace

const Attempt& ProblemInstance::attempt(int column) const {
  if (!table || column < 0 || column >= n) throw ValidationError("column out of range");
  return table->attempts.at(static_cast<std::size_t>(column_attempt[static_cast<std::size_t>(column)]));
}

Maneuver maneuver(const Attempt& from, const Attempt& to, const SatelliteSpec& spec) {
  if (from.satellite != to.satellite) throw ValidationError("maneuver between different satellites");
  if (from.satellite != spec.norad_id) throw ValidationError("maneuver spec does not match the satellite");
  Maneuver m;
  m.from_attempt = from.attempt_id;
  m.to_attempt = to.attempt_id;
  m.slew_angle = angle_between(from.los, to.los) * kRadToDeg;
  m.t_man = m.slew_angle / spec.rotation_speed;
  return m;
}

double maneuver_time(const Attempt& i, const Attempt& j, const SatelliteSpec& spec) {
  return maneuver(i, j, spec).t_man;
}

bool maneuver_conflict(const Attempt& from, const Attempt& to, const SatelliteSpec& spec) {
  const double gap = seconds_between(from.t_clock, to.t_clock);
  return maneuver_time(from, to, spec) + from.acq_duration >= gap;
}

ColumnLayout build_a_rows(const PerformanceTable& table) {
  std::set<int> paired;
  for (const auto& p : table.stereo_pairs) {
    paired.insert(p.first);
    paired.insert(p.second);
  }
  ColumnLayout out;
  std::vector<int> column_of(table.attempts.size(), -1);
  std::set<int> unpaired_requests;
  for (const auto& a : table.attempts) {
    if (a.stereo_role != StereoRole::kMono && !paired.count(a.attempt_id)) {
      unpaired_requests.insert(a.request_id);
      continue;
    }
    column_of[static_cast<std::size_t>(a.attempt_id)] = static_cast<int>(out.column_attempt.size());
    out.column_attempt.push_back(a.attempt_id);
  }
  if (!unpaired_requests.empty()) {
    spdlog::warn("dropped unpaired stereo attempts of {} request(s)", unpaired_requests.size());
  }
  std::set<int> used;
  auto column_for = [&](int attempt_id) {
    const int original = column_of.at(static_cast<std::size_t>(attempt_id));
    if (used.insert(attempt_id).second) return original;
    const int copy = static_cast<int>(out.column_attempt.size());
    out.column_attempt.push_back(attempt_id);
    out.copy_map.emplace(copy, original);
    return copy;
  };
  for (const auto& p : table.stereo_pairs) {
    const int plus = column_for(p.first);
    const int minus = column_for(p.second);
    out.a_rows.push_back({plus, minus});
  }
  return out;
}

std::vector<GRow> build_g_rows(const PerformanceTable& table, std::span<const int> column_attempt, bool simplify) {
  std::vector<GRow> rows;
  auto att = [&](int c) -> const Attempt& {
    return table.attempts[static_cast<std::size_t>(column_attempt[static_cast<std::size_t>(c)])];
  };
  for (const auto& sat : columns_by_satellite(table, column_attempt)) {
    const auto& ord = sat.order;
    const double max_slew_s = kMaxSlewDeg / sat.spec->rotation_speed;
    std::vector<std::pair<std::size_t, std::size_t>> conflicts;  // positions
    for (std::size_t p = 0; p < ord.size(); ++p) {
      const Attempt& from = att(ord[p]);
      const double reach = from.acq_duration + max_slew_s;
      for (std::size_t q = p + 1; q < ord.size(); ++q) {
        const Attempt& to = att(ord[q]);
        if (seconds_between(from.t_clock, to.t_clock) > reach) break;
        if (maneuver_conflict(from, to, *sat.spec)) conflicts.emplace_back(p, q);
      }
    }
    if (!simplify) {
      for (auto [p, q] : conflicts) {
        rows.push_back({{std::min(ord[p], ord[q]), std::max(ord[p], ord[q])}, 1});
      }
      continue;
    }
    // Groups: maximal runs where every consecutive pair conflicts.
    std::vector<std::size_t> group(ord.size());
    std::set<std::pair<std::size_t, std::size_t>> conflict_set(conflicts.begin(), conflicts.end());
    std::size_t g = 0;
    for (std::size_t p = 0; p < ord.size(); ++p) {
      if (p > 0 && !conflict_set.count({p - 1, p})) ++g;
      group[p] = g;
    }
    std::size_t start = 0;
    while (start < ord.size()) {
      std::size_t end = start;
      while (end + 1 < ord.size() && group[end + 1] == group[start]) ++end;
      if (end > start) {
        GRow row;
        for (std::size_t p = start; p <= end; ++p) row.columns.push_back(ord[p]);
        std::sort(row.columns.begin(), row.columns.end());
        rows.push_back(std::move(row));
      }
      start = end + 1;
    }
    for (auto [p, q] : conflicts) {
      if (group[p] != group[q]) rows.push_back({{std::min(ord[p], ord[q]), std::max(ord[p], ord[q])}, 1});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const GRow& a, const GRow& b) { return a.columns < b.columns; });
  return rows;
}

std::vector<GRow> build_g_rows(const PerformanceTable& table, bool simplify) {
  const auto cols = identity_columns(table);
  return build_g_rows(table, cols, simplify);
}

std::vector<BRow> build_b_rows(const PerformanceTable& table, std::span<const int> column_attempt) {
  std::vector<BRow> rows;
  std::unordered_map<int, std::size_t> index;
  for (std::size_t c = 0; c < column_attempt.size(); ++c) {
    const Attempt& a = table.attempts.at(static_cast<std::size_t>(column_attempt[c]));
    auto [it, fresh] = index.emplace(a.request_id, rows.size());
    if (fresh) {
      const Request& r = table.request(a.request_id);
      rows.push_back({a.request_id, {}, r.stereo ? 2 : std::max(1, r.n_strips)});
    }
    rows[it->second].columns.push_back(static_cast<int>(c));
  }
  return rows;
}

std::vector<BRow> build_b_rows(const PerformanceTable& table) {
  const auto cols = identity_columns(table);
  return build_b_rows(table, cols);
}

std::vector<MRow> build_m_rows(const PerformanceTable& table, std::span<const int> column_attempt) {
  std::vector<MRow> rows;
  for (const auto& sat : columns_by_satellite(table, column_attempt)) {
    if (sat.order.empty()) continue;
    MRow row;
    row.satellite = sat.satellite;
    row.cap = sat.spec->memory_capacity;
    row.columns = sat.order;
    std::sort(row.columns.begin(), row.columns.end());
    for (int c : row.columns) {
      row.memory.push_back(table.attempts[static_cast<std::size_t>(column_attempt[static_cast<std::size_t>(c)])].memory_mb);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MRow> build_m_rows(const PerformanceTable& table) {
  const auto cols = identity_columns(table);
  return build_m_rows(table, cols);
}

ProblemInstance assemble(std::shared_ptr<const PerformanceTable> table, bool simplify) {
  if (!table) throw ValidationError("assemble needs a performance table");
  ProblemInstance inst;
  ColumnLayout layout = build_a_rows(*table);
  inst.n = static_cast<int>(layout.column_attempt.size());
  inst.column_attempt = std::move(layout.column_attempt);
  inst.copy_map = std::move(layout.copy_map);
  inst.a_rows = std::move(layout.a_rows);
  inst.simplified = simplify;
  inst.g_rows = build_g_rows(*table, inst.column_attempt, simplify);
  inst.b_rows = build_b_rows(*table, inst.column_attempt);
  inst.m_rows = build_m_rows(*table, inst.column_attempt);
  inst.scores.assign(static_cast<std::size_t>(inst.n), 0.0);
  inst.table = std::move(table);
  validate(inst);
  return inst;
}

std::size_t constraint_count(const ProblemInstance& instance) {
  return instance.g_rows.size() + instance.b_rows.size() + instance.a_rows.size() + instance.m_rows.size();
}

void validate(const ProblemInstance& inst) {
  const auto n = static_cast<std::size_t>(inst.n);
  if (inst.n < 0 || inst.scores.size() != n || inst.column_attempt.size() != n) {
    throw ValidationError("instance column vectors do not match n");
  }
  auto check = [&](int c) {
    if (c < 0 || c >= inst.n) throw ValidationError("row references column " + std::to_string(c));
  };
  for (const auto& [copy, orig] : inst.copy_map) {
    check(copy);
    check(orig);
    if (inst.copy_map.count(orig)) throw ValidationError("copy of a copy");
    if (inst.column_attempt[static_cast<std::size_t>(copy)] != inst.column_attempt[static_cast<std::size_t>(orig)]) {
      throw ValidationError("copy column refers to a different attempt");
    }
  }
  for (const auto& r : inst.g_rows) {
    if (r.columns.size() < 2 || (!inst.simplified && r.columns.size() != 2)) {
      throw ValidationError("malformed g_row");
    }
    for (int c : r.columns) check(c);
  }
  std::vector<int> b_seen(n, 0);
  std::vector<int> m_seen(n, 0);
  for (const auto& r : inst.b_rows) {
    for (int c : r.columns) {
      check(c);
      ++b_seen[static_cast<std::size_t>(c)];
    }
  }
  for (const auto& r : inst.m_rows) {
    if (r.memory.size() != r.columns.size()) throw ValidationError("m_row memory length mismatch");
    for (int c : r.columns) {
      check(c);
      ++m_seen[static_cast<std::size_t>(c)];
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (b_seen[c] != 1) throw ValidationError("column " + std::to_string(c) + " is not in exactly one b_row");
    if (m_seen[c] > 1) throw ValidationError("column " + std::to_string(c) + " is in several m_rows");
  }
  for (const auto& r : inst.a_rows) {
    check(r.plus);
    check(r.minus);
    if (inst.table) {
      const Attempt& p = inst.attempt(r.plus);
      const Attempt& m = inst.attempt(r.minus);
      if (p.stereo_role != StereoRole::kStereoFirst || m.stereo_role != StereoRole::kStereoSecond ||
          p.request_id != m.request_id) {
        throw ValidationError("a_row does not pair a stereo_first with its stereo_second");
      }
    }
  }
  if (inst.table) {
    for (int a : inst.column_attempt) {
      if (a < 0 || static_cast<std::size_t>(a) >= inst.table->attempts.size()) {
        throw ValidationError("column refers to unknown attempt " + std::to_string(a));
      }
    }
  }
}

}  // namespace eos
