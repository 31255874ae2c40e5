// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_PROBLEM_HPP_
#define EOS_PROBLEM_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eos/scenario.hpp"

namespace eos {

// Maneuver conflict row: at most `bound` of `columns` may be selected.
struct GRow {
  std::vector<int> columns;  // ascending
  int bound = 1;
  friend bool operator==(const GRow&, const GRow&) = default;
};

// Per-request acquisition cap.
struct BRow {
  int request_id = 0;
  std::vector<int> columns;  // ascending
  int cap = 1;
  friend bool operator==(const BRow&, const BRow&) = default;
};

// Stereo pairing: x[plus] - x[minus] = 0.
struct ARow {
  int plus = 0;
  int minus = 0;
  friend bool operator==(const ARow&, const ARow&) = default;
};

// Per-satellite memory capacity.
struct MRow {
  int satellite = 0;
  std::vector<int> columns;    // ascending
  std::vector<double> memory;  // MB, parallel to columns
  double cap = 0.0;
  friend bool operator==(const MRow&, const MRow&) = default;
};

struct Maneuver {
  int from_attempt = 0;
  int to_attempt = 0;
  double slew_angle = 0.0;  // deg
  double t_man = 0.0;       // s
};

// Binary program over n columns. A column is an attempt of the table or a
// copy of one (copy_map). Columns 0..n_original-1 are table attempts in
// attempt order (unpaired stereo attempts dropped); copies follow.
struct ProblemInstance {
  int n = 0;
  std::vector<double> scores;      // length n
  std::vector<int> column_attempt;  // column -> attempt_id
  std::map<int, int> copy_map;     // copy column -> original column
  bool simplified = false;
  std::vector<GRow> g_rows;
  std::vector<BRow> b_rows;
  std::vector<ARow> a_rows;
  std::vector<MRow> m_rows;
  std::shared_ptr<const PerformanceTable> table;

  int original_count() const { return n - static_cast<int>(copy_map.size()); }
  const Attempt& attempt(int column) const;
};

Maneuver maneuver(const Attempt& from, const Attempt& to, const SatelliteSpec& spec);
// Slew angle between the two lines of sight over rotation_speed. Throws
// ValidationError when the attempts belong to different satellites.
double maneuver_time(const Attempt& i, const Attempt& j, const SatelliteSpec& spec);

// True when acquiring `from` then `to` is physically impossible:
// T_man + T_acq(from) >= t(to) - t(from). Requires t(from) <= t(to).
bool maneuver_conflict(const Attempt& from, const Attempt& to, const SatelliteSpec& spec);

// Column layout and A rows after applying the copy rule.
struct ColumnLayout {
  std::vector<int> column_attempt;
  std::map<int, int> copy_map;
  std::vector<ARow> a_rows;
};
ColumnLayout build_a_rows(const PerformanceTable& table);

// Rows over an explicit column list (column -> attempt id).
std::vector<GRow> build_g_rows(const PerformanceTable& table, std::span<const int> column_attempt,
                               bool simplify);
std::vector<GRow> build_g_rows(const PerformanceTable& table, bool simplify);
std::vector<BRow> build_b_rows(const PerformanceTable& table, std::span<const int> column_attempt);
std::vector<BRow> build_b_rows(const PerformanceTable& table);
std::vector<MRow> build_m_rows(const PerformanceTable& table, std::span<const int> column_attempt);
std::vector<MRow> build_m_rows(const PerformanceTable& table);

// Scores are zero until attach_scores.
ProblemInstance assemble(std::shared_ptr<const PerformanceTable> table, bool simplify);

std::size_t constraint_count(const ProblemInstance& instance);

// Structural checks: row index ranges, one b_row per column, at most one
// m_row per column, pairwise g_rows have two members. Throws ValidationError.
void validate(const ProblemInstance& instance);

// ---- serialization -------------------------------------------------------

inline constexpr std::string_view kInstanceSchema = "eos.problem_instance";
inline constexpr int kInstanceSchemaVersion = 1;

// JSON document without the table; bundle_id names the table it was built
// from.
std::string instance_to_json(const ProblemInstance& instance, std::string_view bundle_id);
// Throws ParseError; the caller attaches the table.
ProblemInstance instance_from_json(std::string_view text, std::string* bundle_id = nullptr);

// ---- LP format -----------------------------------------------------------

struct LpTerm {
  double coef = 0.0;
  int column = 0;
  friend bool operator==(const LpTerm&, const LpTerm&) = default;
};

struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;
  std::string sense;  // "<=", ">=" or "="
  double rhs = 0.0;
  friend bool operator==(const LpRow&, const LpRow&) = default;
};

struct LpModel {
  int n = 0;
  std::vector<double> objective;  // dense, length n
  std::vector<LpRow> rows;
  friend bool operator==(const LpModel&, const LpModel&) = default;
};

// Rows in g, b, a, m order named g<k>, b<k>, a<k>, m<k>; variables x<col>.
LpModel to_lp_model(const ProblemInstance& instance);
// CPLEX LP subset:
//   \ comment
//   Maximize
//    obj: c0 x0 + c1 x1 ...
//   Subject To
//    name: c x + c x ... <= rhs
//   Binaries
//    x0 x1 ...
//   End
std::string write_lp(const LpModel& model);
LpModel read_lp(std::string_view text);  // throws ParseError
void export_lp(const ProblemInstance& instance, const std::filesystem::path& path);

}  // namespace eos

#endif  // EOS_PROBLEM_HPP_
