// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

// Shared test fixtures: bundled TLEs, a random instance generator and
// brute-force oracles that only use the raw rows or raw attempts.

#ifndef EOS_TESTS_SUPPORT_FIXTURES_HPP_
#define EOS_TESTS_SUPPORT_FIXTURES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eos/astro.hpp"
#include "eos/geo.hpp"
#include "eos/problem.hpp"
#include "eos/scenario.hpp"
#include "eos/solve.hpp"
#include "eos/tle.hpp"

namespace eos::testing {

inline std::filesystem::path source_dir() { return EOS_SOURCE_DIR; }

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<TwoLineElement> spot_tles() { return read_tle_file(source_dir() / "data/tle/spot67.tle"); }

inline SatelliteEntry spot_entry(int index) {
  SatelliteEntry e;
  e.tle = spot_tles().at(static_cast<std::size_t>(index));
  e.spec.norad_id = e.tle.norad_id;
  return e;
}

struct Sgp4State {
  double tsince_min = 0.0;
  bool error = false;
  std::string error_kind;
  Vec3 position;
  Vec3 velocity;
};

struct Sgp4Case {
  std::string line1;
  std::string line2;
  std::vector<Sgp4State> states;
};

// Cases from tests/data/sgp4_verification.txt.
inline std::vector<Sgp4Case> sgp4_cases() {
  std::istringstream in(read_text(source_dir() / "tests/data/sgp4_verification.txt"));
  std::vector<Sgp4Case> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line == "--") continue;
    if (line.rfind("1 ", 0) == 0) {
      out.emplace_back();
      out.back().line1 = line;
      continue;
    }
    if (line.rfind("2 ", 0) == 0) {
      out.back().line2 = line;
      continue;
    }
    std::istringstream ss(line);
    Sgp4State st;
    std::string word;
    ss >> st.tsince_min >> word;
    if (word == "error") {
      st.error = true;
      ss >> st.error_kind;
    } else {
      st.position.x = std::stod(word);
      ss >> st.position.y >> st.position.z >> st.velocity.x >> st.velocity.y >> st.velocity.z;
    }
    out.back().states.push_back(st);
  }
  return out;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// LOS in a 30 degree cone around a fixed nadir direction.
inline Vec3 random_los(std::mt19937_64& rng, double* off_nadir_deg) {
  const double theta = uniform(rng, 0.0, 30.0);
  const double phi = uniform(rng, 0.0, 360.0) * kDegToRad;
  *off_nadir_deg = theta;
  const double t = theta * kDegToRad;
  return {std::sin(t) * std::cos(phi), std::sin(t) * std::sin(phi), -std::cos(t)};
}

struct GenParams {
  int max_columns = 25;
  int satellites = 2;
  bool stereo = true;
  bool multi_strip = true;
  bool memory = true;     // finite memory caps
  double window_s = 600;  // attempts spread over this many seconds
};

inline Instant gen_start() { return make_instant(2024, 10, 16, 12, 0, 0); }

// Random but physically consistent table: every attempt passes the quality
// gates, stereo pairs share satellite and pass, and some stereo_first
// attempts sit in several pairs so that the copy rule is exercised.
inline PerformanceTable random_table(std::mt19937_64& rng, const GenParams& gp) {
  PerformanceTable t;
  t.horizon = {gen_start(), 1.0, 10.0};
  for (int s = 0; s < gp.satellites; ++s) {
    SatelliteEntry e = spot_entry(s);
    if (gp.memory) {
      e.spec.memory_capacity = memory_usage(e.spec) * uniform_int(rng, 2, 7);
    } else {
      e.spec.memory_capacity = 1e12;
    }
    t.satellites.push_back(e);
  }
  t.swath_reference_km = 60.0;

  struct Raw {
    Attempt a;
    int key;  // local id before sorting
  };
  std::vector<Raw> raw;
  std::vector<std::pair<int, int>> pairs;  // raw keys
  int columns = 0;
  int next_key = 0;
  auto make = [&](const Request& r, int sat_index, int strip, StereoRole role, double t_s) {
    Attempt a;
    a.request_id = r.request_id;
    a.satellite = t.satellites[static_cast<std::size_t>(sat_index)].spec.norad_id;
    a.strip_index = strip;
    a.stereo_role = role;
    a.pass_id = 0;
    a.t_clock = add_seconds(t.horizon.start, std::round(t_s));
    a.acq_duration = uniform(rng, 1.0, 10.0);
    a.los = random_los(rng, &a.off_nadir);
    a.sun_elev = uniform(rng, 15.0, 80.0);
    a.cloud_cover = uniform(rng, 0.0, 0.6);
    a.memory_mb = memory_usage(t.satellites[static_cast<std::size_t>(sat_index)].spec);
    a.target = r.location;
    a.criteria = {r.area, a.off_nadir, a.sun_elev, a.cloud_cover, static_cast<double>(r.priority),
                  r.price, static_cast<double>(r.age), r.uncertainty};
    raw.push_back({a, next_key});
    return next_key++;
  };

  int rid = 0;
  for (int guard = 0; guard < 200 && columns < gp.max_columns; ++guard) {
    Request r;
    r.request_id = rid;
    r.location = {uniform(rng, -60, 60), uniform(rng, -180, 179.9), 0.0};
    r.area = uniform(rng, 25, 2500);
    r.priority = uniform_int(rng, 1, 4);
    r.price = 400 + 1.2 * r.area;
    r.age = uniform_int(rng, 0, 10);
    r.uncertainty = uniform(rng, 0, 1);
    r.stereo = gp.stereo && uniform(rng, 0, 1) < 0.3;
    r.n_strips = (!r.stereo && gp.multi_strip && uniform(rng, 0, 1) < 0.3) ? uniform_int(rng, 2, 3) : 1;
    const int sat = uniform_int(rng, 0, gp.satellites - 1);
    if (r.stereo) {
      const int nf = uniform_int(rng, 1, 2);
      const int ns = uniform_int(rng, 1, 2);
      const int np = nf * ns;
      if (columns + nf + ns + (np - std::min(nf, ns)) * 2 > gp.max_columns) continue;
      const double t0 = uniform(rng, 0, gp.window_s - 200);
      std::vector<int> f, s;
      for (int k = 0; k < nf; ++k) f.push_back(make(r, sat, 0, StereoRole::kStereoFirst, t0 + 10.0 * k));
      for (int k = 0; k < ns; ++k) s.push_back(make(r, sat, 0, StereoRole::kStereoSecond, t0 + 90.0 + 10.0 * k));
      std::set<int> used;
      int cols = nf + ns;
      for (int a : f) {
        for (int b : s) {
          pairs.emplace_back(a, b);
          if (!used.insert(a).second) ++cols;
          if (!used.insert(b).second) ++cols;
        }
      }
      columns += cols;
    } else {
      int count = 0;
      std::vector<std::pair<int, double>> slots;
      for (int strip = 0; strip < r.n_strips; ++strip) {
        const int per = uniform_int(rng, 1, 2);
        for (int k = 0; k < per; ++k) slots.emplace_back(strip, uniform(rng, 0, gp.window_s));
        count += per;
      }
      if (columns + count > gp.max_columns) continue;
      std::set<std::pair<int, std::int64_t>> seen;
      for (auto [strip, ts] : slots) {
        const int s = uniform_int(rng, 0, gp.satellites - 1);
        if (!seen.insert({strip * 100 + s, static_cast<std::int64_t>(std::round(ts))}).second) continue;
        make(r, s, strip, StereoRole::kMono, ts);
        ++columns;
      }
    }
    t.requests.push_back(r);
    ++rid;
  }
  std::stable_sort(raw.begin(), raw.end(), [](const Raw& x, const Raw& y) {
    return std::make_tuple(x.a.t_clock, x.a.satellite, x.a.request_id, x.a.strip_index,
                           static_cast<int>(x.a.stereo_role)) <
           std::make_tuple(y.a.t_clock, y.a.satellite, y.a.request_id, y.a.strip_index,
                           static_cast<int>(y.a.stereo_role));
  });
  std::map<int, int> id_of;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i].a.attempt_id = static_cast<int>(i);
    id_of[raw[i].key] = static_cast<int>(i);
    t.attempts.push_back(raw[i].a);
  }
  for (auto [a, b] : pairs) t.stereo_pairs.push_back({id_of[a], id_of[b], 17.5});
  std::sort(t.stereo_pairs.begin(), t.stereo_pairs.end(),
            [](const StereoPair& x, const StereoPair& y) { return std::tie(x.first, x.second) < std::tie(y.first, y.second); });
  return t;
}

inline void random_scores(ProblemInstance& inst, std::mt19937_64& rng) {
  for (int c = 0; c < inst.original_count(); ++c) inst.scores[static_cast<std::size_t>(c)] = uniform(rng, 0.0, 2.0);
  for (const auto& [copy, orig] : inst.copy_map) {
    inst.scores[static_cast<std::size_t>(copy)] = inst.scores[static_cast<std::size_t>(orig)];
  }
}

// Exhaustive search over feasible subsets. Rows g, b and m only grow as
// columns are added, so partial sets violating them are cut; a_rows are
// checked at the leaves.
class BruteForce {
 public:
  explicit BruteForce(const ProblemInstance& inst)
      : inst_(inst),
        g_(inst.g_rows.size(), 0),
        b_(inst.b_rows.size(), 0),
        m_(inst.m_rows.size(), 0.0),
        on_(static_cast<std::size_t>(inst.n), 0) {
    const auto n = static_cast<std::size_t>(inst.n);
    gi_.resize(n);
    bi_.resize(n);
    mi_.resize(n);
    for (std::size_t r = 0; r < inst.g_rows.size(); ++r) {
      for (int c : inst.g_rows[r].columns) gi_[static_cast<std::size_t>(c)].push_back(r);
    }
    for (std::size_t r = 0; r < inst.b_rows.size(); ++r) {
      for (int c : inst.b_rows[r].columns) bi_[static_cast<std::size_t>(c)].push_back(r);
    }
    for (std::size_t r = 0; r < inst.m_rows.size(); ++r) {
      for (std::size_t k = 0; k < inst.m_rows[r].columns.size(); ++k) {
        mi_[static_cast<std::size_t>(inst.m_rows[r].columns[k])].emplace_back(r, inst.m_rows[r].memory[k]);
      }
    }
  }

  double optimum() {
    best_ = 0.0;
    dfs(0, 0.0);
    return best_;
  }

  std::uint64_t leaves() const { return leaves_; }

 private:
  bool fits(std::size_t c) const {
    for (auto r : gi_[c]) {
      if (g_[r] + 1 > inst_.g_rows[r].bound) return false;
    }
    for (auto r : bi_[c]) {
      if (b_[r] + 1 > inst_.b_rows[r].cap) return false;
    }
    for (auto [r, mem] : mi_[c]) {
      if (m_[r] + mem > inst_.m_rows[r].cap * (1.0 + 1e-9)) return false;
    }
    return true;
  }

  void toggle(std::size_t c, int d) {
    on_[c] = d > 0;
    for (auto r : gi_[c]) g_[r] += d;
    for (auto r : bi_[c]) b_[r] += d;
    for (auto [r, mem] : mi_[c]) m_[r] += d * mem;
  }

  void dfs(std::size_t c, double value) {
    if (c == static_cast<std::size_t>(inst_.n)) {
      ++leaves_;
      for (const auto& a : inst_.a_rows) {
        if (on_[static_cast<std::size_t>(a.plus)] != on_[static_cast<std::size_t>(a.minus)]) return;
      }
      best_ = std::max(best_, value);
      return;
    }
    if (fits(c)) {
      toggle(c, +1);
      dfs(c + 1, value + inst_.scores[c]);
      toggle(c, -1);
    }
    dfs(c + 1, value);
  }

  const ProblemInstance& inst_;
  std::vector<std::vector<std::size_t>> gi_, bi_;
  std::vector<std::vector<std::pair<std::size_t, double>>> mi_;
  std::vector<int> g_, b_;
  std::vector<double> m_;
  std::vector<char> on_;
  double best_ = 0.0;
  std::uint64_t leaves_ = 0;
};

// Single-satellite instance with maneuver rows only.
inline ProblemInstance chain_instance(std::mt19937_64& rng, int n) {
  GenParams gp;
  gp.max_columns = n;
  gp.satellites = 1;
  gp.stereo = false;
  gp.multi_strip = false;
  gp.memory = false;
  gp.window_s = uniform(rng, 120.0, 600.0);
  auto table = std::make_shared<PerformanceTable>(random_table(rng, gp));
  ProblemInstance inst;
  inst.table = table;
  inst.n = static_cast<int>(table->attempts.size());
  for (int c = 0; c < inst.n; ++c) inst.column_attempt.push_back(c);
  inst.g_rows = build_g_rows(*table, false);
  inst.scores.assign(static_cast<std::size_t>(inst.n), 0.0);
  random_scores(inst, rng);
  return inst;
}

// Direct physical check of a selection against raw attempts, independent of
// the constraint rows.
inline bool simulate_feasible(const ProblemInstance& inst, const std::vector<int>& x) {
  const PerformanceTable& t = *inst.table;
  std::map<int, std::vector<int>> by_sat;
  for (int c : x) by_sat[inst.attempt(c).satellite].push_back(c);
  for (auto& [sat, cols] : by_sat) {
    std::sort(cols.begin(), cols.end(), [&](int a, int b) {
      return std::make_pair(inst.attempt(a).t_clock, a) < std::make_pair(inst.attempt(b).t_clock, b);
    });
    const SatelliteSpec& spec = t.spec_for(sat);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      for (std::size_t j = i + 1; j < cols.size(); ++j) {
        const Attempt& a = inst.attempt(cols[i]);
        const Attempt& b = inst.attempt(cols[j]);
        const double slew = angle_between(a.los, b.los) * kRadToDeg / spec.rotation_speed;
        if (slew + a.acq_duration >= seconds_between(a.t_clock, b.t_clock)) return false;
      }
    }
    double mem = 0.0;
    for (int c : cols) mem += inst.attempt(c).memory_mb;
    if (mem > spec.memory_capacity * (1.0 + 1e-9)) return false;
  }
  std::map<int, int> per_request;
  for (int c : x) ++per_request[inst.attempt(c).request_id];
  for (auto [rid, count] : per_request) {
    const Request& r = t.request(rid);
    if (count > (r.stereo ? 2 : r.n_strips)) return false;
  }
  const std::set<int> on(x.begin(), x.end());
  for (const auto& a : inst.a_rows) {
    if (on.count(a.plus) != on.count(a.minus)) return false;
  }
  return true;
}

}  // namespace eos::testing

#endif  // EOS_TESTS_SUPPORT_FIXTURES_HPP_
