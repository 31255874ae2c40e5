// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_SCORING_HPP_
#define EOS_SCORING_HPP_

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eos/problem.hpp"
#include "eos/scenario.hpp"

namespace eos {

enum class ScoringMethod { kWsa, kTopsis, kElectre3 };
std::string_view to_string(ScoringMethod m);
ScoringMethod parse_scoring_method(std::string_view text);  // throws ParseError

enum class Direction { kMaximize, kMinimize };

struct PreferenceModel {
  CriteriaVector weights{};
  CriteriaVector q{};  // indifference
  CriteriaVector p{};  // preference
  CriteriaVector v{};  // veto
  std::array<Direction, kCriteriaCount> directions{};

  friend bool operator==(const PreferenceModel&, const PreferenceModel&) = default;
};

// Weights 0.05/0.1/0.1/0.2/0.2/0.1/0.2/0.05 over (area, off_nadir, sun_elev,
// cloud_cover, priority, price, age, uncertainty); cloud thresholds are
// fractions.
PreferenceModel default_preferences();
// Weights nonnegative summing to 1 within 1e-9, 0 <= q <= p <= v, all
// finite. Throws ValidationError.
void validate(const PreferenceModel& prefs);
// Rescales weights to sum 1.
PreferenceModel normalized(PreferenceModel prefs);

// Keys weights, q, p, v, directions. Each is an 8-array in criterion order or
// an object keyed by criterion name; missing keys keep the defaults.
PreferenceModel parse_preferences(std::string_view json_text);
PreferenceModel read_preferences(const std::filesystem::path& path);
std::string preferences_to_json(const PreferenceModel& prefs);

using CriteriaMatrix = std::vector<CriteriaVector>;

struct ScoreVector {
  ScoringMethod method = ScoringMethod::kElectre3;
  std::vector<double> values;
};

// Min-max normalized weighted sum in [0, 1]; constant columns score 0.5.
ScoreVector score_wsa(const CriteriaMatrix& m, const PreferenceModel& prefs);
// Closeness to the ideal over vector-normalized weighted columns, in [0, 1].
ScoreVector score_topsis(const CriteriaMatrix& m, const PreferenceModel& prefs);
// Reference-profile ELECTRE-III, in [0, 2]:
//   score(a) = sigma(a, ideal) - sigma(anti_ideal, a) + 1
ScoreVector score_electre3(const CriteriaMatrix& m, const PreferenceModel& prefs);
ScoreVector score(ScoringMethod method, const CriteriaMatrix& m, const PreferenceModel& prefs);

// Credibility that a outranks b, in [0, 1].
double electre_credibility(const CriteriaVector& a, const CriteriaVector& b, const PreferenceModel& prefs);
// Best and worst value per criterion over m, following the directions.
std::pair<CriteriaVector, CriteriaVector> reference_profiles(const CriteriaMatrix& m,
                                                             const PreferenceModel& prefs);

// Criteria of the non-copy columns, in column order.
CriteriaMatrix criteria_matrix(const ProblemInstance& instance);
// sv covers the non-copy columns; copies take their original's score.
// Throws ValidationError on length mismatch or non-finite/negative scores.
void attach_scores(ProblemInstance& instance, const ScoreVector& sv);

}  // namespace eos

#endif  // EOS_SCORING_HPP_
