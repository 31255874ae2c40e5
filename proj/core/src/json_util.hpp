// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_SRC_JSON_UTIL_HPP_
#define EOS_SRC_JSON_UTIL_HPP_

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "eos/astro.hpp"
#include "eos/demand.hpp"
#include "eos/errors.hpp"
#include "eos/geo.hpp"
#include "eos/time.hpp"

namespace eos {

using Json = nlohmann::json;

inline void to_json(Json& j, const GeodeticPoint& p) {
  j = Json{{"latitude", p.latitude}, {"longitude", p.longitude}, {"altitude", p.altitude}};
}
inline void from_json(const Json& j, GeodeticPoint& p) {
  p.latitude = j.at("latitude").get<double>();
  p.longitude = j.at("longitude").get<double>();
  p.altitude = j.value("altitude", 0.0);
}

inline void to_json(Json& j, const Vec3& v) { j = Json::array({v.x, v.y, v.z}); }
inline void from_json(const Json& j, Vec3& v) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected a 3-vector");
  v = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline void to_json(Json& j, const Request& r) {
  j = Json{{"request_id", r.request_id}, {"location", r.location}, {"area", r.area},
           {"priority", r.priority},     {"price", r.price},       {"age", r.age},
           {"stereo", r.stereo},         {"uncertainty", r.uncertainty},
           {"n_strips", r.n_strips}};
}
inline void from_json(const Json& j, Request& r) {
  r.request_id = j.at("request_id").get<int>();
  r.location = j.at("location").get<GeodeticPoint>();
  r.area = j.at("area").get<double>();
  r.priority = j.at("priority").get<int>();
  r.price = j.at("price").get<double>();
  r.age = j.at("age").get<int>();
  r.stereo = j.at("stereo").get<bool>();
  r.uncertainty = j.at("uncertainty").get<double>();
  r.n_strips = j.value("n_strips", 1);
}

inline void to_json(Json& j, const SatelliteSpec& s) {
  j = Json{{"norad_id", s.norad_id},
           {"rotation_speed", s.rotation_speed},
           {"swath", s.swath},
           {"max_off_nadir", s.max_off_nadir},
           {"memory_capacity", s.memory_capacity},
           {"resolution", s.resolution}};
}
inline void from_json(const Json& j, SatelliteSpec& s) {
  const SatelliteSpec d;
  s.norad_id = j.at("norad_id").get<int>();
  s.rotation_speed = j.value("rotation_speed", d.rotation_speed);
  s.swath = j.value("swath", d.swath);
  s.max_off_nadir = j.value("max_off_nadir", d.max_off_nadir);
  s.memory_capacity = j.value("memory_capacity", d.memory_capacity);
  s.resolution = j.value("resolution", d.resolution);
}

// Parses text, converting library exceptions into ParseError.
inline Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

// Runs fn(), mapping nlohmann type/key errors to ParseError.
template <typename Fn>
auto json_guard(const std::string& what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

// Canonical serialization used for every JSON artifact: sorted keys (the
// default object map), two-space indent, trailing newline.
inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace eos

#endif  // EOS_SRC_JSON_UTIL_HPP_
