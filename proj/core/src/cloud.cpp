// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <tuple>

#include "eos/errors.hpp"
#include "eos/scenario.hpp"
#include "http_util.hpp"
#include "json_util.hpp"

namespace eos {
namespace {

constexpr double kNoiseAmplitude = 0.25;
constexpr double kLatticeDeg = 5.0;
constexpr std::int64_t kLatticeSeconds = 3 * 3600;
constexpr std::int64_t kLonCells = 72;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double lattice_value(std::int64_t ix, std::int64_t iy, std::int64_t it, std::uint64_t seed) {
  ix = ((ix % kLonCells) + kLonCells) % kLonCells;
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(ix));
  h = splitmix64(h ^ static_cast<std::uint64_t>(iy));
  h = splitmix64(h ^ static_cast<std::uint64_t>(it));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double smooth(double f) { return f * f * (3.0 - 2.0 * f); }

class SyntheticCloud final : public CloudProvider {
 public:
  explicit SyntheticCloud(std::uint64_t seed) : seed_(seed) {}
  double cloud_cover(const GeodeticPoint& location, Instant t) const override {
    return synthetic_cloud(location, t, seed_);
  }

 private:
  std::uint64_t seed_;
};

class HttpPointForecast final : public CloudProvider {
 public:
  explicit HttpPointForecast(CloudSource source) : source_(std::move(source)) {
    if (const char* key = std::getenv(source_.api_key_env.c_str())) api_key_ = key;
  }

  double cloud_cover(const GeodeticPoint& location, Instant t) const override {
    const std::int64_t unix_s =
        std::chrono::duration_cast<std::chrono::seconds>(t.time_since_epoch()).count();
    const std::int64_t bucket = unix_s - ((unix_s % kLatticeSeconds) + kLatticeSeconds) % kLatticeSeconds;
    const auto key = std::make_tuple(std::llround(location.latitude * 100.0),
                                     std::llround(location.longitude * 100.0), bucket);
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    double value = fetch(location, bucket).value_or(-1.0);
    if (value < 0.0) value = synthetic_cloud(location, t, source_.seed);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(key, value);
    return value;
  }

 private:
  std::optional<double> fetch(const GeodeticPoint& location, std::int64_t bucket) const {
    std::ostringstream url;
    url.precision(6);
    url << std::fixed << source_.endpoint
        << (source_.endpoint.find('?') == std::string::npos ? '?' : '&') << "lat=" << location.latitude
        << "&lon=" << location.longitude << "&time=" << bucket;
    if (!api_key_.empty()) url << "&appid=" << detail::url_encode(api_key_);
    const auto res = detail::http_get(url.str(), source_.timeout_s, source_.retries);
    if (!res.ok) {
      warn_once("weather request failed (" + res.error + "); using synthetic clouds");
      return std::nullopt;
    }
    try {
      const Json j = Json::parse(res.body);
      double v;
      if (j.contains("cloud_cover")) {
        v = j.at("cloud_cover").get<double>();
      } else {
        v = j.at("clouds").at("all").get<double>() / 100.0;
      }
      if (!std::isfinite(v)) throw ParseError("non-finite cloud cover");
      return std::clamp(v, 0.0, 1.0);
    } catch (const std::exception& e) {
      warn_once(std::string("unreadable weather reply (") + e.what() + "); using synthetic clouds");
      return std::nullopt;
    }
  }

  void warn_once(const std::string& msg) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!warned_) spdlog::warn("{}", msg);
    warned_ = true;
  }

  CloudSource source_;
  std::string api_key_;
  mutable std::mutex mu_;
  mutable bool warned_ = false;
  mutable std::map<std::tuple<long long, long long, std::int64_t>, double> cache_;
};

}  // namespace

double cloud_climatology(double latitude_deg) {
  const double lat = latitude_deg * kDegToRad;
  return std::clamp(0.55 - 0.15 * std::cos(2.0 * lat) + 0.10 * std::cos(6.0 * lat), 0.1, 0.8);
}

double synthetic_cloud(const GeodeticPoint& location, Instant t, std::uint64_t seed) {
  const double x = (location.longitude + 180.0) / kLatticeDeg;
  const double y = (location.latitude + 90.0) / kLatticeDeg;
  const double us = static_cast<double>(t.time_since_epoch().count());
  const double z = us / (static_cast<double>(kLatticeSeconds) * 1e6);
  const double fx0 = std::floor(x), fy0 = std::floor(y), fz0 = std::floor(z);
  const auto ix = static_cast<std::int64_t>(fx0);
  const auto iy = static_cast<std::int64_t>(fy0);
  const auto it = static_cast<std::int64_t>(fz0);
  const double fx = smooth(x - fx0), fy = smooth(y - fy0), fz = smooth(z - fz0);
  double v = 0.0;
  for (int dz = 0; dz < 2; ++dz) {
    for (int dy = 0; dy < 2; ++dy) {
      for (int dx = 0; dx < 2; ++dx) {
        const double w = (dx ? fx : 1.0 - fx) * (dy ? fy : 1.0 - fy) * (dz ? fz : 1.0 - fz);
        v += w * lattice_value(ix + dx, iy + dy, it + dz, seed);
      }
    }
  }
  return std::clamp(cloud_climatology(location.latitude) + kNoiseAmplitude * (2.0 * v - 1.0), 0.0, 1.0);
}

std::unique_ptr<CloudProvider> make_cloud_provider(const CloudSource& source) {
  if (source.mode == CloudSource::Mode::kSynthetic) return std::make_unique<SyntheticCloud>(source.seed);
  if (source.endpoint.empty()) throw ValidationError("http cloud source requires an endpoint");
  return std::make_unique<HttpPointForecast>(source);
}

}  // namespace eos
