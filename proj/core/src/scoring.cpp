// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/scoring.hpp"

#include <algorithm>
#include <cmath>

#include "eos/errors.hpp"
#include "file_util.hpp"
#include "json_util.hpp"

namespace eos {
namespace {

constexpr std::size_t kC = kCriteriaCount;

void check_finite(const CriteriaMatrix& m) {
  for (const auto& row : m) {
    for (double x : row) {
      if (!std::isfinite(x)) throw ValidationError("non-finite criterion value");
    }
  }
}

bool better_or_equal(double a, double b, Direction d) { return d == Direction::kMaximize ? a >= b : a <= b; }

// Difference oriented so that positive favors a.
double advantage(double a, double b, Direction d) { return d == Direction::kMaximize ? a - b : b - a; }

double concordance(double delta, double q, double p) {
  if (delta >= -q) return 1.0;
  if (delta < -p || p == q) return 0.0;
  return (delta + p) / (p - q);
}

double discordance(double delta, double p, double v) {
  if (delta >= -p) return 0.0;
  if (delta <= -v || v == p) return 1.0;
  return (-delta - p) / (v - p);
}

CriteriaVector read_vector(const Json& j, const CriteriaVector& fallback) {
  CriteriaVector out = fallback;
  if (j.is_array()) {
    if (j.size() != kC) throw ParseError("expected 8 criterion values");
    for (std::size_t c = 0; c < kC; ++c) out[c] = j[c].get<double>();
    return out;
  }
  if (!j.is_object()) throw ParseError("expected an array or an object keyed by criterion");
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for (std::size_t c = 0; c < kC; ++c) {
      if (criterion_name(static_cast<int>(c)) == key) {
        out[c] = value.get<double>();
        found = true;
      }
    }
    if (!found) throw ParseError("unknown criterion '" + key + "'");
  }
  return out;
}

Direction parse_direction(const std::string& s) {
  if (s == "maximize" || s == "max") return Direction::kMaximize;
  if (s == "minimize" || s == "min") return Direction::kMinimize;
  throw ParseError("unknown direction '" + s + "'");
}

}  // namespace

std::string_view to_string(ScoringMethod m) {
  switch (m) {
    case ScoringMethod::kWsa: return "wsa";
    case ScoringMethod::kTopsis: return "topsis";
    case ScoringMethod::kElectre3: return "electre3";
  }
  return "electre3";
}

ScoringMethod parse_scoring_method(std::string_view text) {
  if (text == "wsa") return ScoringMethod::kWsa;
  if (text == "topsis") return ScoringMethod::kTopsis;
  if (text == "electre3" || text == "electre") return ScoringMethod::kElectre3;
  throw ParseError("unknown scoring method '" + std::string(text) + "'");
}

PreferenceModel default_preferences() {
  PreferenceModel m;
  m.weights = {0.05, 0.1, 0.1, 0.2, 0.2, 0.1, 0.2, 0.05};
  m.q = {0, 0, 0, 0, 0, 0, 0, 0};
  m.p = {30, 2, 10, 0.02, 1, 100, 4, 0.5};
  m.v = {1000, 40, 40, 0.15, 4, 20000, 10, 1};
  using D = Direction;
  m.directions = {D::kMaximize, D::kMinimize, D::kMaximize, D::kMinimize,
                  D::kMinimize, D::kMaximize, D::kMaximize, D::kMinimize};
  return m;
}

void validate(const PreferenceModel& prefs) {
  double sum = 0.0;
  for (std::size_t c = 0; c < kC; ++c) {
    const double w = prefs.weights[c];
    if (!std::isfinite(w) || w < 0.0) throw ValidationError("weights must be finite and nonnegative");
    sum += w;
    const double q = prefs.q[c], p = prefs.p[c], v = prefs.v[c];
    if (!std::isfinite(q) || !std::isfinite(p) || !std::isfinite(v) || q < 0.0 || q > p || p > v) {
      throw ValidationError("thresholds for " + std::string(criterion_name(static_cast<int>(c))) +
                            " must satisfy 0 <= q <= p <= v");
    }
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("weights must sum to 1");
}

PreferenceModel normalized(PreferenceModel prefs) {
  double sum = 0.0;
  for (double w : prefs.weights) sum += w;
  if (!(sum > 0.0) || !std::isfinite(sum)) throw ValidationError("weights must have a positive finite sum");
  for (double& w : prefs.weights) w /= sum;
  return prefs;
}

PreferenceModel parse_preferences(std::string_view json_text) {
  const Json j = parse_json(json_text, "preferences");
  PreferenceModel m = json_guard("preferences", [&] {
    if (!j.is_object()) throw ParseError("preferences must be a JSON object");
    PreferenceModel out = default_preferences();
    for (const auto& [key, value] : j.items()) {
      if (key == "weights") {
        out.weights = read_vector(value, out.weights);
      } else if (key == "q") {
        out.q = read_vector(value, out.q);
      } else if (key == "p") {
        out.p = read_vector(value, out.p);
      } else if (key == "v") {
        out.v = read_vector(value, out.v);
      } else if (key == "directions") {
        if (value.is_array()) {
          if (value.size() != kC) throw ParseError("expected 8 directions");
          for (std::size_t c = 0; c < kC; ++c) out.directions[c] = parse_direction(value[c].get<std::string>());
        } else {
          for (const auto& [name, d] : value.items()) {
            bool found = false;
            for (std::size_t c = 0; c < kC; ++c) {
              if (criterion_name(static_cast<int>(c)) == name) {
                out.directions[c] = parse_direction(d.get<std::string>());
                found = true;
              }
            }
            if (!found) throw ParseError("unknown criterion '" + name + "'");
          }
        }
      } else {
        throw ParseError("unknown preference key '" + key + "'");
      }
    }
    return out;
  });
  validate(m);
  return m;
}

PreferenceModel read_preferences(const std::filesystem::path& path) {
  return parse_preferences(detail::read_file(path));
}

std::string preferences_to_json(const PreferenceModel& prefs) {
  Json dirs = Json::array();
  for (auto d : prefs.directions) dirs.push_back(d == Direction::kMaximize ? "maximize" : "minimize");
  return dump_canonical(Json{{"weights", prefs.weights}, {"q", prefs.q}, {"p", prefs.p}, {"v", prefs.v},
                             {"directions", dirs}});
}

ScoreVector score_wsa(const CriteriaMatrix& m, const PreferenceModel& prefs) {
  if (m.empty()) throw ValidationError("scoring needs at least one attempt");
  check_finite(m);
  ScoreVector sv{ScoringMethod::kWsa, std::vector<double>(m.size(), 0.0)};
  for (std::size_t c = 0; c < kC; ++c) {
    double lo = m[0][c], hi = m[0][c];
    for (const auto& row : m) {
      lo = std::min(lo, row[c]);
      hi = std::max(hi, row[c]);
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      double u = 0.5;
      if (hi > lo) {
        u = (m[i][c] - lo) / (hi - lo);
        if (prefs.directions[c] == Direction::kMinimize) u = 1.0 - u;
      }
      sv.values[i] += prefs.weights[c] * u;
    }
  }
  return sv;
}

ScoreVector score_topsis(const CriteriaMatrix& m, const PreferenceModel& prefs) {
  if (m.empty()) throw ValidationError("scoring needs at least one attempt");
  check_finite(m);
  CriteriaVector col_norm{};
  for (const auto& row : m) {
    for (std::size_t c = 0; c < kC; ++c) col_norm[c] += row[c] * row[c];
  }
  bool any = false;
  for (double& x : col_norm) {
    x = std::sqrt(x);
    any = any || x > 0.0;
  }
  if (!any) throw ValidationError("TOPSIS needs at least one nonzero column");
  CriteriaMatrix v(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t c = 0; c < kC; ++c) {
      v[i][c] = col_norm[c] > 0.0 ? prefs.weights[c] * m[i][c] / col_norm[c] : 0.0;
    }
  }
  CriteriaVector ideal = v[0], anti = v[0];
  for (const auto& row : v) {
    for (std::size_t c = 0; c < kC; ++c) {
      if (better_or_equal(row[c], ideal[c], prefs.directions[c])) ideal[c] = row[c];
      if (better_or_equal(anti[c], row[c], prefs.directions[c])) anti[c] = row[c];
    }
  }
  ScoreVector sv{ScoringMethod::kTopsis, std::vector<double>(m.size(), 0.0)};
  for (std::size_t i = 0; i < m.size(); ++i) {
    double dp = 0.0, dm = 0.0;
    for (std::size_t c = 0; c < kC; ++c) {
      dp += (v[i][c] - ideal[c]) * (v[i][c] - ideal[c]);
      dm += (v[i][c] - anti[c]) * (v[i][c] - anti[c]);
    }
    dp = std::sqrt(dp);
    dm = std::sqrt(dm);
    sv.values[i] = dp + dm > 0.0 ? dm / (dp + dm) : 0.5;
  }
  return sv;
}

double electre_credibility(const CriteriaVector& a, const CriteriaVector& b, const PreferenceModel& prefs) {
  CriteriaVector d{};
  double global = 0.0;
  for (std::size_t c = 0; c < kC; ++c) {
    const double delta = advantage(a[c], b[c], prefs.directions[c]);
    global += prefs.weights[c] * concordance(delta, prefs.q[c], prefs.p[c]);
    d[c] = discordance(delta, prefs.p[c], prefs.v[c]);
  }
  global = std::clamp(global, 0.0, 1.0);
  double sigma = global;
  for (std::size_t c = 0; c < kC; ++c) {
    if (d[c] > global) sigma *= (1.0 - d[c]) / (1.0 - global);
  }
  return std::clamp(sigma, 0.0, 1.0);
}

std::pair<CriteriaVector, CriteriaVector> reference_profiles(const CriteriaMatrix& m, const PreferenceModel& prefs) {
  if (m.empty()) throw ValidationError("reference profiles need at least one attempt");
  CriteriaVector ideal = m[0], anti = m[0];
  for (const auto& row : m) {
    for (std::size_t c = 0; c < kC; ++c) {
      if (better_or_equal(row[c], ideal[c], prefs.directions[c])) ideal[c] = row[c];
      if (better_or_equal(anti[c], row[c], prefs.directions[c])) anti[c] = row[c];
    }
  }
  return {ideal, anti};
}

ScoreVector score_electre3(const CriteriaMatrix& m, const PreferenceModel& prefs) {
  if (m.empty()) throw ValidationError("scoring needs at least one attempt");
  check_finite(m);
  const auto [ideal, anti] = reference_profiles(m, prefs);
  ScoreVector sv{ScoringMethod::kElectre3, std::vector<double>(m.size(), 0.0)};
  for (std::size_t i = 0; i < m.size(); ++i) {
    sv.values[i] = electre_credibility(m[i], ideal, prefs) - electre_credibility(anti, m[i], prefs) + 1.0;
  }
  return sv;
}

ScoreVector score(ScoringMethod method, const CriteriaMatrix& m, const PreferenceModel& prefs) {
  validate(prefs);
  switch (method) {
    case ScoringMethod::kWsa: return score_wsa(m, prefs);
    case ScoringMethod::kTopsis: return score_topsis(m, prefs);
    case ScoringMethod::kElectre3: return score_electre3(m, prefs);
  }
  throw ValidationError("unknown scoring method");
}

CriteriaMatrix criteria_matrix(const ProblemInstance& instance) {
  CriteriaMatrix m;
  for (int c = 0; c < instance.original_count(); ++c) m.push_back(instance.attempt(c).criteria);
  return m;
}

void attach_scores(ProblemInstance& instance, const ScoreVector& sv) {
  const auto originals = static_cast<std::size_t>(instance.original_count());
  if (sv.values.size() != originals) {
    throw ValidationError("score vector has " + std::to_string(sv.values.size()) + " values for " +
                          std::to_string(originals) + " columns");
  }
  for (double x : sv.values) {
    if (!std::isfinite(x) || x < 0.0) throw ValidationError("scores must be finite and nonnegative");
  }
  instance.scores.assign(static_cast<std::size_t>(instance.n), 0.0);
  std::copy(sv.values.begin(), sv.values.end(), instance.scores.begin());
  for (const auto& [copy, orig] : instance.copy_map) {
    instance.scores[static_cast<std::size_t>(copy)] = instance.scores[static_cast<std::size_t>(orig)];
  }
}

}  // namespace eos
