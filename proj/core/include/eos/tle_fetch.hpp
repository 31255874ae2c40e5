// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_TLE_FETCH_HPP_
#define EOS_TLE_FETCH_HPP_

#include <filesystem>
#include <string>

#include "eos/tle.hpp"

namespace eos {

struct TleFetchOptions {
  // Must contain "{norad_id}", e.g.
  // "https://celestrak.org/NORAD/elements/gp.php?CATNR={norad_id}&FORMAT=TLE"
  std::string url_template;
  std::filesystem::path cache_dir;
  double timeout_s = 10.0;
  int retries = 1;
};

// Offline-first: a cached "<cache_dir>/<norad_id>.tle" is returned without any
// network access. Otherwise the TLE is downloaded, validated and cached.
// Throws IoError on network failure, ParseError on a malformed reply.
TwoLineElement fetch_tle(int norad_id, const TleFetchOptions& options);

}  // namespace eos

#endif  // EOS_TLE_FETCH_HPP_
