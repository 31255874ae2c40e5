// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

// Loopback HTTP server for the network clients.

#ifndef EOS_TESTS_SUPPORT_LOCAL_SERVER_HPP_
#define EOS_TESTS_SUPPORT_LOCAL_SERVER_HPP_

#include <atomic>
#include <string>
#include <thread>

#include "httplib.h"

namespace eos::testing {

class LocalServer {
 public:
  LocalServer() = default;
  LocalServer(const LocalServer&) = delete;
  LocalServer& operator=(const LocalServer&) = delete;
  ~LocalServer() { stop(); }

  httplib::Server& server() { return server_; }

  void start() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void stop() {
    if (thread_.joinable()) {
      server_.stop();
      thread_.join();
    }
  }

  std::string base() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace eos::testing

#endif  // EOS_TESTS_SUPPORT_LOCAL_SERVER_HPP_
