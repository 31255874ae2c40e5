// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_SOLVE_HPP_
#define EOS_SOLVE_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eos/problem.hpp"

namespace eos {

enum class SolveMethod { kGreedy, kElpa, kExact, kExternal };
std::string_view to_string(SolveMethod m);
SolveMethod parse_solve_method(std::string_view text);  // throws ParseError

struct Schedule {
  SolveMethod method = SolveMethod::kGreedy;
  std::vector<int> selected;  // columns, ascending
  double objective = 0.0;
  double runtime_s = 0.0;
  bool feasible = false;
  bool optimal = false;  // proven optimal (exact engine only)
};

enum class RowKind { kNone, kG, kB, kA, kM };
std::string_view to_string(RowKind k);

struct FeasibilityResult {
  bool feasible = true;
  RowKind kind = RowKind::kNone;
  int row = -1;  // index within its family
};

// Rows are checked in g, b, a, m order. Throws ValidationError for indices
// outside [0, n) or duplicates.
FeasibilityResult check_feasible(const ProblemInstance& instance, std::span<const int> x);

double objective(const ProblemInstance& instance, std::span<const int> x);

Schedule solve_greedy(const ProblemInstance& instance, std::uint64_t seed);
Schedule solve_elpa(const ProblemInstance& instance);

struct ExactOptions {
  double time_limit_s = 60.0;
};
// Refuses simplified instances (RefusedError): group rows cut off feasible
// selections.
Schedule solve_exact(const ProblemInstance& instance, const ExactOptions& options = {});

struct ReplayResult {
  int overlaps = 0;
  // First offending (from, to) columns, -1 when none.
  int first_from = -1;
  int first_to = -1;
};
// Walks each satellite's selected acquisitions in time order, slewing at the
// platform rate between lines of sight, and counts acquisitions that start
// before the platform is ready.
ReplayResult replay_timeline(const ProblemInstance& instance, std::span<const int> x);

inline constexpr std::string_view kSolutionSchema = "eos.solution";
inline constexpr int kSolutionSchemaVersion = 1;

// {schema, version, bundle_id, method, objective, runtime_s, selected
// (attempt ids), columns, feasible, optimal}.
std::string schedule_to_json(const ProblemInstance& instance, const Schedule& s, std::string_view bundle_id);
Schedule schedule_from_json(std::string_view text, std::string* bundle_id = nullptr);

}  // namespace eos

#endif  // EOS_SOLVE_HPP_
