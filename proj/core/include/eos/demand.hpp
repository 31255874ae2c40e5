// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_DEMAND_HPP_
#define EOS_DEMAND_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eos/geo.hpp"

namespace eos {

struct Request {
  int request_id = 0;
  GeodeticPoint location;
  double area = 0.0;  // km^2
  int priority = 1;   // 1 (highest) .. 4
  double price = 0.0;
  int age = 0;  // days
  bool stereo = false;
  double uncertainty = 0.0;
  int n_strips = 1;

  friend bool operator==(const Request&, const Request&) = default;
};

// Throws ValidationError.
void validate(const Request& r);
void validate(std::span<const Request> db);  // also checks id uniqueness

struct PopulationCell {
  GeodeticPoint center;
  double weight = 0.0;
};

struct PopulationGrid {
  double cell_size_deg = 5.0;
  std::vector<PopulationCell> cells;  // weights normalized to sum 1
};

// Normalizes weights. Throws ValidationError on an empty grid, negative
// weights or a zero total.
PopulationGrid make_population_grid(std::vector<PopulationCell> cells, double cell_size_deg);

// The embedded 5-degree world grid (2592 cells).
const PopulationGrid& builtin_population_grid();

// CSV with header "center_lat,center_lon,weight"; '#' lines are comments.
PopulationGrid parse_population_grid_csv(std::string_view text, double cell_size_deg);

struct DemandOptions {
  // Swath used for the provisional n_strips; rebound per scenario.
  double swath_reference_km = 60.0;
};

// Deterministic for fixed (n_requests, seed, grid). Throws ValidationError
// when n_requests <= 0 or the grid is empty.
std::vector<Request> generate_customer_db(int n_requests, std::uint64_t seed,
                                          const PopulationGrid& grid,
                                          const DemandOptions& options = {});

// Index of the grid cell a sampled location came from (nearest center).
std::size_t cell_index(const PopulationGrid& grid, const GeodeticPoint& p);

struct PriorityHistogram {
  std::array<int, 4> counts{};  // priorities 1..4
  int total() const;
  double mean() const;
};

// Throws ValidationError on an empty db.
PriorityHistogram priority_histogram(std::span<const Request> db);

// JSON lines, one request per line.
std::string to_jsonl(std::span<const Request> db);
std::vector<Request> from_jsonl(std::string_view text);
void write_db(const std::filesystem::path& path, std::span<const Request> db);
std::vector<Request> read_db(const std::filesystem::path& path);

}  // namespace eos

#endif  // EOS_DEMAND_HPP_
