// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_PIPELINE_HPP_
#define EOS_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eos/problem.hpp"
#include "eos/report.hpp"
#include "eos/scenario.hpp"
#include "eos/scoring.hpp"
#include "eos/solve.hpp"

namespace eos {

struct RunConfig {
  std::uint64_t seed = 42;
  int n_requests = 300;
  std::vector<int> norad_ids{38755, 40053};
  // TLE source: tle_file if set, else tle_url (cached in tle_cache_dir), else
  // the bundled SPOT 6/7 set.
  std::filesystem::path tle_file;
  std::string tle_url;
  std::filesystem::path tle_cache_dir = "tle_cache";
  Horizon horizon{make_instant(2024, 10, 17, 9, 40), 8.0, 10.0};
  // Per-satellite overrides; satellites not listed use SatelliteSpec defaults.
  std::vector<SatelliteSpec> satellites;
  CloudSource clouds;
  ScoringMethod scoring = ScoringMethod::kElectre3;
  PreferenceModel preferences = default_preferences();
  SolveMethod solver = SolveMethod::kElpa;
  double time_limit_s = 60.0;
  bool simplify = true;
  bool keep_all_steps = false;
  int workers = 0;
  std::filesystem::path output_dir = "eos_out";
  bool reproducible = false;
};

// Throws ValidationError for bad values and RefusedError for simplify with a
// solver other than elpa.
void validate(const RunConfig& config);
std::string config_to_json(const RunConfig& config);
// Missing keys keep their defaults. Throws ParseError.
RunConfig config_from_json(std::string_view text, RunConfig base = {});

// Scenario handoff: the table, the instance built from it and the table hash
// that ties later artifacts to it.
struct Bundle {
  std::shared_ptr<const PerformanceTable> table;
  ProblemInstance instance;
  std::string bundle_id;
};

inline constexpr std::string_view kTableFile = "table.json";
inline constexpr std::string_view kTableBinaryFile = "table.bin";
inline constexpr std::string_view kInstanceFile = "instance.json";
inline constexpr std::string_view kLpFile = "problem.lp";

std::vector<Request> run_customer_db(const RunConfig& config);
std::vector<SatelliteEntry> load_satellites(const RunConfig& config);
// An empty database yields an empty bundle.
Bundle run_scenario(const RunConfig& config, std::span<const Request> db);
Bundle make_bundle(PerformanceTable table, bool simplify);
// Scores the instance in place and solves it. Refuses exact on a simplified
// instance and the external method.
Schedule run_solve(Bundle& bundle, const RunConfig& config);

void write_bundle(const std::filesystem::path& dir, const Bundle& bundle);
Bundle read_bundle(const std::filesystem::path& dir);  // checks the table hash

// Reads a solution and checks it against the bundle. Throws ValidationError
// on a bundle id mismatch or out-of-range columns.
Schedule read_solution(const std::filesystem::path& path, const Bundle& bundle);
void write_solution(const std::filesystem::path& path, const Bundle& bundle, const Schedule& schedule,
                    bool reproducible);

struct PipelineArtifacts {
  std::filesystem::path db;
  std::filesystem::path bundle_dir;
  std::filesystem::path solution;
  std::filesystem::path map_html;
  std::filesystem::path map_geojson;
  std::filesystem::path report_json;
  std::filesystem::path report_markdown;
};

// Every stage, writing into config.output_dir.
PipelineArtifacts run_all(const RunConfig& config);

}  // namespace eos

#endif  // EOS_PIPELINE_HPP_
