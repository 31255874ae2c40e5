// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_SRC_SOLVE_COMMON_HPP_
#define EOS_SRC_SOLVE_COMMON_HPP_

#include <chrono>
#include <vector>

#include "eos/problem.hpp"
#include "eos/solve.hpp"

namespace eos::detail {

inline constexpr double kMemoryTolerance = 1e-9;

// Column -> row memberships.
struct RowIndex {
  std::vector<std::vector<int>> g;  // g_row ids per column
  std::vector<int> b;               // b_row id per column, -1 if none
  std::vector<int> a;               // first a_row id per column, -1 if none
  std::vector<int> m;               // m_row id per column, -1 if none
  std::vector<double> mem;          // memory in its m_row

  explicit RowIndex(const ProblemInstance& inst);
};

// Running row sums for a partial selection restricted to g, b and m rows.
class RowTracker {
 public:
  RowTracker(const ProblemInstance& inst, const RowIndex& idx);
  bool can_add(int col) const;
  // True when all columns can be added together.
  bool can_add_all(const std::vector<int>& cols);
  void add(int col);
  void remove(int col);

 private:
  const ProblemInstance& inst_;
  const RowIndex& idx_;
  std::vector<int> g_count_;
  std::vector<int> b_count_;
  std::vector<double> m_sum_;
};

// Columns tied together by a_rows; each entry lists the columns of one unit.
std::vector<std::vector<int>> stereo_units(const ProblemInstance& inst);

Schedule finish(const ProblemInstance& inst, SolveMethod method, std::vector<int> selected,
                std::chrono::steady_clock::time_point started);

}  // namespace eos::detail

#endif  // EOS_SRC_SOLVE_COMMON_HPP_
