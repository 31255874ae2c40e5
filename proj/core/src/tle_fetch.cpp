// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/tle_fetch.hpp"

#include "eos/errors.hpp"
#include "file_util.hpp"
#include "http_util.hpp"

namespace eos {

TwoLineElement fetch_tle(int norad_id, const TleFetchOptions& options) {
  const auto cached = options.cache_dir / (std::to_string(norad_id) + ".tle");
  if (!options.cache_dir.empty() && std::filesystem::exists(cached)) {
    auto tles = read_tle_file(cached);
    for (auto& t : tles) {
      if (t.norad_id == norad_id) return t;
    }
    throw ParseError("cached TLE file " + cached.string() + " lacks catalog " + std::to_string(norad_id));
  }
  std::string url = options.url_template;
  const std::string key = "{norad_id}";
  const auto pos = url.find(key);
  if (pos == std::string::npos) throw ValidationError("TLE URL template lacks {norad_id}");
  url.replace(pos, key.size(), std::to_string(norad_id));

  const auto res = detail::http_get(url, options.timeout_s, options.retries);
  if (!res.ok) throw IoError("TLE download failed for " + std::to_string(norad_id) + ": " + res.error);
  auto tles = parse_tle_file(res.body);
  for (auto& t : tles) {
    if (t.norad_id == norad_id) {
      if (!options.cache_dir.empty()) {
        std::filesystem::create_directories(options.cache_dir);
        detail::write_file_atomic(cached, to_text(t));
      }
      return t;
    }
  }
  throw ParseError("TLE reply does not contain catalog " + std::to_string(norad_id));
}

}  // namespace eos
