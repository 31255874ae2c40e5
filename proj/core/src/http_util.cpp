// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "http_util.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>

#include "httplib.h"

namespace eos::detail {

HttpResult http_get(const std::string& url, double timeout_s, int retries) {
  HttpResult result;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    result.error = "URL without scheme: " + url;
    return result;
  }
  const auto path_start = url.find('/', scheme_end + 3);
  const std::string base = url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  const auto timeout = std::chrono::microseconds(static_cast<long long>(timeout_s * 1e6));
  for (int attempt = 0; attempt <= retries; ++attempt) {
    httplib::Client client(base);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_follow_location(true);
    auto res = client.Get(path);
    if (!res) {
      result.error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    result.status = res->status;
    result.body = res->body;
    if (res->status >= 200 && res->status < 300) {
      result.ok = true;
      result.error.clear();
      return result;
    }
    result.error = "HTTP status " + std::to_string(res->status);
    if (res->status < 500) break;
  }
  return result;
}

std::string url_encode(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    }
  }
  return out;
}

}  // namespace eos::detail
