// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_SRC_HTTP_UTIL_HPP_
#define EOS_SRC_HTTP_UTIL_HPP_

#include <string>

namespace eos::detail {

struct HttpResult {
  bool ok = false;
  int status = 0;
  std::string body;
  std::string error;
};

// GET with a per-attempt timeout; retries transport errors and 5xx replies.
HttpResult http_get(const std::string& url, double timeout_s, int retries);

std::string url_encode(const std::string& s);

}  // namespace eos::detail

#endif  // EOS_SRC_HTTP_UTIL_HPP_
