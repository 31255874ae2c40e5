// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/errors.hpp"
#include "eos/problem.hpp"
#include "json_util.hpp"

namespace eos {

std::string instance_to_json(const ProblemInstance& inst, std::string_view bundle_id) {
  Json copies = Json::array();
  for (const auto& [copy, orig] : inst.copy_map) copies.push_back(Json::array({copy, orig}));
  Json g = Json::array();
  for (const auto& r : inst.g_rows) g.push_back(Json{{"columns", r.columns}, {"bound", r.bound}});
  Json b = Json::array();
  for (const auto& r : inst.b_rows) {
    b.push_back(Json{{"request_id", r.request_id}, {"columns", r.columns}, {"cap", r.cap}});
  }
  Json a = Json::array();
  for (const auto& r : inst.a_rows) a.push_back(Json::array({r.plus, r.minus}));
  Json m = Json::array();
  for (const auto& r : inst.m_rows) {
    m.push_back(Json{{"satellite", r.satellite}, {"columns", r.columns}, {"memory", r.memory}, {"cap", r.cap}});
  }
  const Json j{{"schema", kInstanceSchema},
               {"version", kInstanceSchemaVersion},
               {"bundle_id", bundle_id},
               {"n", inst.n},
               {"simplified", inst.simplified},
               {"scores", inst.scores},
               {"column_attempt", inst.column_attempt},
               {"copy_map", copies},
               {"g_rows", g},
               {"b_rows", b},
               {"a_rows", a},
               {"m_rows", m}};
  return dump_canonical(j);
}

ProblemInstance instance_from_json(std::string_view text, std::string* bundle_id) {
  const Json j = parse_json(text, "problem instance");
  return json_guard("problem instance", [&] {
    if (j.at("schema").get<std::string>() != kInstanceSchema) throw ParseError("not a problem instance");
    if (j.at("version").get<int>() != kInstanceSchemaVersion) throw ParseError("unsupported instance version");
    ProblemInstance inst;
    if (bundle_id) *bundle_id = j.at("bundle_id").get<std::string>();
    inst.n = j.at("n").get<int>();
    inst.simplified = j.at("simplified").get<bool>();
    inst.scores = j.at("scores").get<std::vector<double>>();
    inst.column_attempt = j.at("column_attempt").get<std::vector<int>>();
    for (const auto& c : j.at("copy_map")) inst.copy_map.emplace(c.at(0).get<int>(), c.at(1).get<int>());
    for (const auto& r : j.at("g_rows")) {
      inst.g_rows.push_back({r.at("columns").get<std::vector<int>>(), r.at("bound").get<int>()});
    }
    for (const auto& r : j.at("b_rows")) {
      inst.b_rows.push_back(
          {r.at("request_id").get<int>(), r.at("columns").get<std::vector<int>>(), r.at("cap").get<int>()});
    }
    for (const auto& r : j.at("a_rows")) inst.a_rows.push_back({r.at(0).get<int>(), r.at(1).get<int>()});
    for (const auto& r : j.at("m_rows")) {
      inst.m_rows.push_back({r.at("satellite").get<int>(), r.at("columns").get<std::vector<int>>(),
                             r.at("memory").get<std::vector<double>>(), r.at("cap").get<double>()});
    }
    validate(inst);
    return inst;
  });
}

}  // namespace eos
