// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "eos/errors.hpp"
#include "eos/solve.hpp"
#include "json_util.hpp"

namespace eos {

std::string schedule_to_json(const ProblemInstance& inst, const Schedule& s, std::string_view bundle_id) {
  std::vector<int> attempts;
  for (int c : s.selected) attempts.push_back(inst.column_attempt.at(static_cast<std::size_t>(c)));
  std::sort(attempts.begin(), attempts.end());
  const Json j{{"schema", kSolutionSchema},
               {"version", kSolutionSchemaVersion},
               {"bundle_id", bundle_id},
               {"method", to_string(s.method)},
               {"objective", s.objective},
               {"runtime_s", s.runtime_s},
               {"selected", attempts},
               {"columns", s.selected},
               {"feasible", s.feasible},
               {"optimal", s.optimal}};
  return dump_canonical(j);
}

Schedule schedule_from_json(std::string_view text, std::string* bundle_id) {
  const Json j = parse_json(text, "solution");
  return json_guard("solution", [&] {
    if (j.at("schema").get<std::string>() != kSolutionSchema) throw ParseError("not a solution file");
    if (j.at("version").get<int>() != kSolutionSchemaVersion) throw ParseError("unsupported solution version");
    Schedule s;
    if (bundle_id) *bundle_id = j.at("bundle_id").get<std::string>();
    s.method = parse_solve_method(j.at("method").get<std::string>());
    s.objective = j.at("objective").get<double>();
    s.runtime_s = j.at("runtime_s").get<double>();
    s.selected = j.at("columns").get<std::vector<int>>();
    s.feasible = j.at("feasible").get<bool>();
    s.optimal = j.value("optimal", false);
    return s;
  });
}

}  // namespace eos
