// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/table_io.hpp"

#include <bit>
#include <cstring>
#include <type_traits>

#include "eos/errors.hpp"
#include "file_util.hpp"
#include "json_util.hpp"

namespace eos {
namespace {

static_assert(std::endian::native == std::endian::little, "binary table cache assumes little-endian");

constexpr std::string_view kMagic = "EOSPTBL1";
constexpr std::uint32_t kBinaryVersion = 1;

Json horizon_json(const Horizon& h) {
  return Json{{"start", format_iso8601(h.start)},
              {"duration_hours", h.duration_hours},
              {"granularity_s", h.granularity_s}};
}

Horizon horizon_from(const Json& j) {
  Horizon h;
  h.start = parse_iso8601(j.at("start").get<std::string>());
  h.duration_hours = j.at("duration_hours").get<double>();
  h.granularity_s = j.at("granularity_s").get<double>();
  return h;
}

Json metadata_json(const PerformanceTable& t) {
  Json sats = Json::array();
  for (const auto& s : t.satellites) {
    sats.push_back(Json{{"name", s.tle.name}, {"line1", s.tle.line1}, {"line2", s.tle.line2}, {"spec", s.spec}});
  }
  return Json{{"schema", kTableSchema},
              {"version", kTableSchemaVersion},
              {"horizon", horizon_json(t.horizon)},
              {"satellites", sats},
              {"requests", t.requests},
              {"swath_reference_km", t.swath_reference_km}};
}

void metadata_from(const Json& j, PerformanceTable& t) {
  if (j.at("schema").get<std::string>() != kTableSchema) throw ParseError("not a performance table");
  if (j.at("version").get<int>() != kTableSchemaVersion) {
    throw ParseError("unsupported performance table version " + j.at("version").dump());
  }
  t.horizon = horizon_from(j.at("horizon"));
  for (const auto& s : j.at("satellites")) {
    SatelliteEntry e;
    e.tle = parse_tle_lines(s.at("line1").get<std::string>(), s.at("line2").get<std::string>(),
                            s.value("name", std::string{}));
    e.spec = s.at("spec").get<SatelliteSpec>();
    t.satellites.push_back(std::move(e));
  }
  t.requests = j.at("requests").get<std::vector<Request>>();
  t.swath_reference_km = j.at("swath_reference_km").get<double>();
}

Json attempt_json(const Attempt& a) {
  return Json{{"attempt_id", a.attempt_id},
              {"request_id", a.request_id},
              {"satellite", a.satellite},
              {"strip_index", a.strip_index},
              {"stereo_role", to_string(a.stereo_role)},
              {"pass_id", a.pass_id},
              {"t_clock", format_iso8601(a.t_clock)},
              {"acq_duration", a.acq_duration},
              {"los", a.los},
              {"off_nadir", a.off_nadir},
              {"sun_elev", a.sun_elev},
              {"cloud_cover", a.cloud_cover},
              {"memory_mb", a.memory_mb},
              {"target", a.target},
              {"criteria", a.criteria}};
}

Attempt attempt_from(const Json& j) {
  Attempt a;
  a.attempt_id = j.at("attempt_id").get<int>();
  a.request_id = j.at("request_id").get<int>();
  a.satellite = j.at("satellite").get<int>();
  a.strip_index = j.at("strip_index").get<int>();
  a.stereo_role = parse_stereo_role(j.at("stereo_role").get<std::string>());
  a.pass_id = j.at("pass_id").get<int>();
  a.t_clock = parse_iso8601(j.at("t_clock").get<std::string>());
  a.acq_duration = j.at("acq_duration").get<double>();
  a.los = j.at("los").get<Vec3>();
  a.off_nadir = j.at("off_nadir").get<double>();
  a.sun_elev = j.at("sun_elev").get<double>();
  a.cloud_cover = j.at("cloud_cover").get<double>();
  a.memory_mb = j.at("memory_mb").get<double>();
  a.target = j.at("target").get<GeodeticPoint>();
  a.criteria = j.at("criteria").get<CriteriaVector>();
  return a;
}

class Writer {
 public:
  template <typename T>
  void put(T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    const auto* p = reinterpret_cast<const char*>(&v);
    out_.append(p, sizeof(T));
  }
  void bytes(std::string_view s) { out_.append(s); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}
  template <typename T>
  T get() {
    T v;
    std::memcpy(&v, take(sizeof(T)).data(), sizeof(T));
    return v;
  }
  std::string_view take(std::size_t n) {
    if (n > in_.size() - pos_) throw ParseError("truncated binary table");
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string table_to_json(const PerformanceTable& table) {
  Json j = metadata_json(table);
  Json attempts = Json::array();
  for (const auto& a : table.attempts) attempts.push_back(attempt_json(a));
  Json pairs = Json::array();
  for (const auto& p : table.stereo_pairs) {
    pairs.push_back(Json{{"first", p.first}, {"second", p.second}, {"convergence_deg", p.convergence_deg}});
  }
  j["attempts"] = std::move(attempts);
  j["stereo_pairs"] = std::move(pairs);
  return dump_canonical(j);
}

PerformanceTable table_from_json(std::string_view text) {
  const Json j = parse_json(text, "performance table");
  return json_guard("performance table", [&] {
    PerformanceTable t;
    metadata_from(j, t);
    for (const auto& a : j.at("attempts")) t.attempts.push_back(attempt_from(a));
    for (const auto& p : j.at("stereo_pairs")) {
      t.stereo_pairs.push_back(
          {p.at("first").get<int>(), p.at("second").get<int>(), p.at("convergence_deg").get<double>()});
    }
    return t;
  });
}

void write_table(const std::filesystem::path& path, const PerformanceTable& table) {
  detail::write_file_atomic(path, table_to_json(table));
}

PerformanceTable read_table(const std::filesystem::path& path) {
  return table_from_json(detail::read_file(path));
}

std::string table_to_binary(const PerformanceTable& table) {
  Json meta = metadata_json(table);
  meta["attempt_count"] = table.attempts.size();
  meta["pair_count"] = table.stereo_pairs.size();
  const std::string meta_text = meta.dump();
  Writer w;
  w.bytes(kMagic);
  w.put<std::uint32_t>(kBinaryVersion);
  w.put<std::uint64_t>(meta_text.size());
  w.bytes(meta_text);
  const auto& as = table.attempts;
  for (const auto& a : as) w.put<std::int32_t>(a.request_id);
  for (const auto& a : as) w.put<std::int32_t>(a.satellite);
  for (const auto& a : as) w.put<std::int32_t>(a.strip_index);
  for (const auto& a : as) w.put<std::int32_t>(static_cast<std::int32_t>(a.stereo_role));
  for (const auto& a : as) w.put<std::int32_t>(a.pass_id);
  for (const auto& a : as) w.put<std::int64_t>(a.t_clock.time_since_epoch().count());
  for (const auto& a : as) w.put(a.acq_duration);
  for (const auto& a : as) w.put(a.los.x);
  for (const auto& a : as) w.put(a.los.y);
  for (const auto& a : as) w.put(a.los.z);
  for (const auto& a : as) w.put(a.off_nadir);
  for (const auto& a : as) w.put(a.sun_elev);
  for (const auto& a : as) w.put(a.cloud_cover);
  for (const auto& a : as) w.put(a.memory_mb);
  for (const auto& a : as) w.put(a.target.latitude);
  for (const auto& a : as) w.put(a.target.longitude);
  for (const auto& a : as) w.put(a.target.altitude);
  for (int c = 0; c < kCriteriaCount; ++c) {
    for (const auto& a : as) w.put(a.criteria[static_cast<std::size_t>(c)]);
  }
  for (const auto& p : table.stereo_pairs) w.put<std::int32_t>(p.first);
  for (const auto& p : table.stereo_pairs) w.put<std::int32_t>(p.second);
  for (const auto& p : table.stereo_pairs) w.put(p.convergence_deg);
  return w.take();
}

PerformanceTable table_from_binary(std::string_view bytes) {
  Reader r(bytes);
  if (r.take(kMagic.size()) != kMagic) throw ParseError("not a binary performance table");
  if (r.get<std::uint32_t>() != kBinaryVersion) throw ParseError("unsupported binary table version");
  const auto meta_len = r.get<std::uint64_t>();
  const Json meta = parse_json(r.take(meta_len), "binary table metadata");
  PerformanceTable t;
  std::size_t n = 0;
  std::size_t np = 0;
  json_guard("binary table metadata", [&] {
    metadata_from(meta, t);
    n = meta.at("attempt_count").get<std::size_t>();
    np = meta.at("pair_count").get<std::size_t>();
  });
  if (n > bytes.size() || np > bytes.size()) throw ParseError("binary table counts exceed file size");
  t.attempts.resize(n);
  auto& as = t.attempts;
  for (std::size_t i = 0; i < n; ++i) as[i].attempt_id = static_cast<int>(i);
  for (auto& a : as) a.request_id = r.get<std::int32_t>();
  for (auto& a : as) a.satellite = r.get<std::int32_t>();
  for (auto& a : as) a.strip_index = r.get<std::int32_t>();
  for (auto& a : as) {
    const auto role = r.get<std::int32_t>();
    if (role < 0 || role > 2) throw ParseError("bad stereo role in binary table");
    a.stereo_role = static_cast<StereoRole>(role);
  }
  for (auto& a : as) a.pass_id = r.get<std::int32_t>();
  for (auto& a : as) a.t_clock = Instant(std::chrono::microseconds(r.get<std::int64_t>()));
  for (auto& a : as) a.acq_duration = r.get<double>();
  for (auto& a : as) a.los.x = r.get<double>();
  for (auto& a : as) a.los.y = r.get<double>();
  for (auto& a : as) a.los.z = r.get<double>();
  for (auto& a : as) a.off_nadir = r.get<double>();
  for (auto& a : as) a.sun_elev = r.get<double>();
  for (auto& a : as) a.cloud_cover = r.get<double>();
  for (auto& a : as) a.memory_mb = r.get<double>();
  for (auto& a : as) a.target.latitude = r.get<double>();
  for (auto& a : as) a.target.longitude = r.get<double>();
  for (auto& a : as) a.target.altitude = r.get<double>();
  for (int c = 0; c < kCriteriaCount; ++c) {
    for (auto& a : as) a.criteria[static_cast<std::size_t>(c)] = r.get<double>();
  }
  t.stereo_pairs.resize(np);
  for (auto& p : t.stereo_pairs) p.first = r.get<std::int32_t>();
  for (auto& p : t.stereo_pairs) p.second = r.get<std::int32_t>();
  for (auto& p : t.stereo_pairs) p.convergence_deg = r.get<double>();
  if (!r.done()) throw ParseError("trailing bytes in binary table");
  return t;
}

void write_table_binary(const std::filesystem::path& path, const PerformanceTable& table) {
  detail::write_file_atomic(path, table_to_binary(table));
}

PerformanceTable read_table_binary(const std::filesystem::path& path) {
  return table_from_binary(detail::read_file(path));
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace eos
