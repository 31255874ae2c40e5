// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/demand.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "embedded.hpp"
#include "eos/errors.hpp"
#include "file_util.hpp"
#include "json_util.hpp"

namespace eos {
namespace {

// 53 random mantissa bits; the std distributions are implementation-defined,
// so they are avoided to keep databases identical across standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

constexpr std::array<double, 4> kPriorityCdf{0.2, 0.5, 0.8, 1.0};
constexpr double kAreaMin = 25.0;
constexpr double kAreaMax = 2500.0;

}  // namespace

void validate(const Request& r) {
  validate(r.location);
  if (r.location.altitude != 0.0) throw ValidationError("request location altitude must be 0");
  if (!std::isfinite(r.area) || r.area <= 0.0) throw ValidationError("request area must be > 0");
  if (r.priority < 1 || r.priority > 4) throw ValidationError("request priority must be in 1..4");
  if (!std::isfinite(r.price) || r.price <= 0.0) throw ValidationError("request price must be > 0");
  if (r.age < 0) throw ValidationError("request age must be >= 0");
  if (!(r.uncertainty >= 0.0 && r.uncertainty <= 1.0)) {
    throw ValidationError("request uncertainty must be in [0, 1]");
  }
  if (r.n_strips < 1) throw ValidationError("request n_strips must be >= 1");
}

void validate(std::span<const Request> db) {
  std::set<int> ids;
  for (const auto& r : db) {
    validate(r);
    if (!ids.insert(r.request_id).second) {
      throw ValidationError("duplicate request_id " + std::to_string(r.request_id));
    }
  }
}

PopulationGrid make_population_grid(std::vector<PopulationCell> cells, double cell_size_deg) {
  if (cells.empty()) throw ValidationError("population grid is empty");
  if (!(cell_size_deg > 0.0)) throw ValidationError("population grid cell size must be > 0");
  double total = 0.0;
  for (const auto& c : cells) {
    if (!std::isfinite(c.weight) || c.weight < 0.0) {
      throw ValidationError("population cell weight must be >= 0");
    }
    total += c.weight;
  }
  if (!(total > 0.0)) throw ValidationError("population grid has zero total weight");
  for (auto& c : cells) c.weight /= total;
  return PopulationGrid{cell_size_deg, std::move(cells)};
}

PopulationGrid parse_population_grid_csv(std::string_view text, double cell_size_deg) {
  std::vector<PopulationCell> cells;
  std::istringstream in{std::string(text)};
  bool header = true;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      if (line.rfind("center_lat", 0) == 0) continue;
    }
    double lat, lon, w;
    char c1, c2;
    std::istringstream ls(line);
    if (!(ls >> lat >> c1 >> lon >> c2 >> w) || c1 != ',' || c2 != ',') {
      throw ParseError("bad population grid row: '" + line + "'");
    }
    cells.push_back({{lat, lon, 0.0}, w});
  }
  return make_population_grid(std::move(cells), cell_size_deg);
}

const PopulationGrid& builtin_population_grid() {
  static const PopulationGrid grid = parse_population_grid_csv(embedded::kPopulationGridCsv, 5.0);
  return grid;
}

std::vector<Request> generate_customer_db(int n_requests, std::uint64_t seed,
                                          const PopulationGrid& grid,
                                          const DemandOptions& options) {
  if (n_requests <= 0) throw ValidationError("n_requests must be >= 1");
  if (grid.cells.empty()) throw ValidationError("population grid is empty");
  if (!(options.swath_reference_km > 0.0)) throw ValidationError("swath reference must be > 0");

  std::vector<double> cdf(grid.cells.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    acc += grid.cells[i].weight;
    cdf[i] = acc;
  }
  if (!(acc > 0.0)) throw ValidationError("population grid has zero total weight");

  std::mt19937_64 rng(seed);
  std::vector<Request> db;
  db.reserve(static_cast<std::size_t>(n_requests));
  const double half = grid.cell_size_deg / 2.0;
  for (int i = 0; i < n_requests; ++i) {
    const double u_cell = uniform01(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u_cell);
    if (it == cdf.end()) --it;
    const auto& cell = grid.cells[static_cast<std::size_t>(it - cdf.begin())];

    Request r;
    r.request_id = i;
    const double lat = cell.center.latitude + (2.0 * uniform01(rng) - 1.0) * half;
    const double lon = cell.center.longitude + (2.0 * uniform01(rng) - 1.0) * half;
    r.location = {std::clamp(lat, -90.0, 90.0), wrap_longitude(lon), 0.0};

    const double u_pri = uniform01(rng);
    r.priority = 4;
    for (int p = 0; p < 4; ++p) {
      if (u_pri < kPriorityCdf[static_cast<std::size_t>(p)]) {
        r.priority = p + 1;
        break;
      }
    }
    r.area = kAreaMin * std::pow(kAreaMax / kAreaMin, uniform01(rng));
    r.age = std::min(10, static_cast<int>(uniform01(rng) * 11.0));
    r.stereo = uniform01(rng) < 0.1;
    r.uncertainty = uniform01(rng);
    const double bonus = r.priority == 1 ? 600.0 : (r.priority == 2 ? 300.0 : 0.0);
    r.price = 400.0 + 1.2 * r.area + bonus;
    r.n_strips = r.stereo ? 1
                          : std::max(1, static_cast<int>(std::ceil(std::sqrt(r.area) /
                                                                   options.swath_reference_km)));
    db.push_back(r);
  }
  return db;
}

std::size_t cell_index(const PopulationGrid& grid, const GeodeticPoint& p) {
  std::size_t best = 0;
  double best_d = 1e300;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const auto& c = grid.cells[i].center;
    double dlon = std::abs(p.longitude - c.longitude);
    dlon = std::min(dlon, 360.0 - dlon);
    const double d = std::max(std::abs(p.latitude - c.latitude), dlon);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

int PriorityHistogram::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

double PriorityHistogram::mean() const {
  const int n = total();
  if (n == 0) return 0.0;
  double s = 0.0;
  for (int p = 0; p < 4; ++p) s += (p + 1) * counts[static_cast<std::size_t>(p)];
  return s / n;
}

PriorityHistogram priority_histogram(std::span<const Request> db) {
  if (db.empty()) throw ValidationError("priority histogram of an empty database");
  PriorityHistogram h;
  for (const auto& r : db) {
    if (r.priority < 1 || r.priority > 4) throw ValidationError("priority outside 1..4");
    ++h.counts[static_cast<std::size_t>(r.priority - 1)];
  }
  return h;
}

std::string to_jsonl(std::span<const Request> db) {
  std::string out;
  for (const auto& r : db) out += Json(r).dump() + "\n";
  return out;
}

std::vector<Request> from_jsonl(std::string_view text) {
  std::vector<Request> db;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string what = "request db line " + std::to_string(line_no);
    const Json j = parse_json(line, what);
    db.push_back(json_guard(what, [&] { return j.get<Request>(); }));
  }
  validate(db);
  return db;
}

void write_db(const std::filesystem::path& path, std::span<const Request> db) {
  detail::write_file_atomic(path, to_jsonl(db));
}

std::vector<Request> read_db(const std::filesystem::path& path) {
  return from_jsonl(detail::read_file(path));
}

}  // namespace eos
