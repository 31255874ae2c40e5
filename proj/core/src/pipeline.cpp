// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>

#include "embedded.hpp"
#include "eos/errors.hpp"
#include "eos/table_io.hpp"
#include "eos/tle_fetch.hpp"
#include "file_util.hpp"
#include "json_util.hpp"

namespace eos {
namespace {

Json cloud_json(const CloudSource& c) {
  return Json{{"mode", c.mode == CloudSource::Mode::kSynthetic ? "synthetic" : "http"},
              {"seed", c.seed},
              {"endpoint", c.endpoint},
              {"api_key_env", c.api_key_env},
              {"timeout_s", c.timeout_s},
              {"retries", c.retries}};
}

CloudSource cloud_from(const Json& j, CloudSource c) {
  if (j.contains("mode")) {
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "synthetic") {
      c.mode = CloudSource::Mode::kSynthetic;
    } else if (mode == "http") {
      c.mode = CloudSource::Mode::kHttpPointForecast;
    } else {
      throw ParseError("unknown cloud mode '" + mode + "'");
    }
  }
  c.seed = j.value("seed", c.seed);
  c.endpoint = j.value("endpoint", c.endpoint);
  c.api_key_env = j.value("api_key_env", c.api_key_env);
  c.timeout_s = j.value("timeout_s", c.timeout_s);
  c.retries = j.value("retries", c.retries);
  return c;
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.n_requests < 0) throw ValidationError("n_requests must be >= 0");
  if (c.norad_ids.empty()) throw ValidationError("at least one NORAD id is required");
  validate(c.horizon);
  validate(c.preferences);
  for (const auto& s : c.satellites) validate(s);
  if (!(c.time_limit_s >= 0.0)) throw ValidationError("time_limit_s must be >= 0");
  if (c.workers < 0) throw ValidationError("workers must be >= 0");
  if (c.clouds.mode == CloudSource::Mode::kHttpPointForecast && c.clouds.endpoint.empty()) {
    throw ValidationError("http cloud mode needs an endpoint");
  }
  if (c.simplify && c.solver != SolveMethod::kElpa) {
    throw RefusedError("simplify=true is only valid with the elpa solver; pass --simplify false");
  }
}

std::string config_to_json(const RunConfig& c) {
  Json prefs = parse_json(preferences_to_json(c.preferences), "preferences");
  const Json j{{"seed", c.seed},
               {"n_requests", c.n_requests},
               {"norad_ids", c.norad_ids},
               {"tle_file", c.tle_file.string()},
               {"tle_url", c.tle_url},
               {"tle_cache_dir", c.tle_cache_dir.string()},
               {"horizon",
                {{"start", format_iso8601(c.horizon.start)},
                 {"duration_hours", c.horizon.duration_hours},
                 {"granularity_s", c.horizon.granularity_s}}},
               {"satellites", c.satellites},
               {"cloud", cloud_json(c.clouds)},
               {"scoring", to_string(c.scoring)},
               {"preferences", prefs},
               {"solver", to_string(c.solver)},
               {"time_limit_s", c.time_limit_s},
               {"simplify", c.simplify},
               {"keep_all_steps", c.keep_all_steps},
               {"workers", c.workers},
               {"output_dir", c.output_dir.string()},
               {"reproducible", c.reproducible}};
  return dump_canonical(j);
}

RunConfig config_from_json(std::string_view text, RunConfig c) {
  const Json j = parse_json(text, "config");
  return json_guard("config", [&] {
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "n_requests") {
        c.n_requests = v.get<int>();
      } else if (key == "norad_ids") {
        c.norad_ids = v.get<std::vector<int>>();
      } else if (key == "tle_file") {
        c.tle_file = v.get<std::string>();
      } else if (key == "tle_url") {
        c.tle_url = v.get<std::string>();
      } else if (key == "tle_cache_dir") {
        c.tle_cache_dir = v.get<std::string>();
      } else if (key == "horizon") {
        if (v.contains("start")) c.horizon.start = parse_iso8601(v.at("start").get<std::string>());
        c.horizon.duration_hours = v.value("duration_hours", c.horizon.duration_hours);
        c.horizon.granularity_s = v.value("granularity_s", c.horizon.granularity_s);
      } else if (key == "satellites") {
        c.satellites = v.get<std::vector<SatelliteSpec>>();
      } else if (key == "cloud") {
        c.clouds = cloud_from(v, c.clouds);
      } else if (key == "scoring") {
        c.scoring = parse_scoring_method(v.get<std::string>());
      } else if (key == "preferences") {
        c.preferences = parse_preferences(v.dump());
      } else if (key == "solver") {
        c.solver = parse_solve_method(v.get<std::string>());
      } else if (key == "time_limit_s") {
        c.time_limit_s = v.get<double>();
      } else if (key == "simplify") {
        c.simplify = v.get<bool>();
      } else if (key == "keep_all_steps") {
        c.keep_all_steps = v.get<bool>();
      } else if (key == "workers") {
        c.workers = v.get<int>();
      } else if (key == "output_dir") {
        c.output_dir = v.get<std::string>();
      } else if (key == "reproducible") {
        c.reproducible = v.get<bool>();
      } else {
        throw ParseError("unknown config key '" + key + "'");
      }
    }
    return c;
  });
}

std::vector<Request> run_customer_db(const RunConfig& config) {
  if (config.n_requests == 0) return {};
  return generate_customer_db(config.n_requests, config.seed, builtin_population_grid());
}

std::vector<SatelliteEntry> load_satellites(const RunConfig& config) {
  std::vector<TwoLineElement> pool;
  if (!config.tle_file.empty()) {
    pool = read_tle_file(config.tle_file);
  } else if (config.tle_url.empty()) {
    pool = parse_tle_file(embedded::kBuiltinTles);
  }
  std::vector<SatelliteEntry> out;
  for (int id : config.norad_ids) {
    SatelliteEntry e;
    if (config.tle_file.empty() && !config.tle_url.empty()) {
      e.tle = fetch_tle(id, {config.tle_url, config.tle_cache_dir});
    } else {
      auto it = std::find_if(pool.begin(), pool.end(), [&](const TwoLineElement& t) { return t.norad_id == id; });
      if (it == pool.end()) throw ValidationError("no TLE for NORAD id " + std::to_string(id));
      e.tle = *it;
    }
    e.spec.norad_id = id;
    for (const auto& s : config.satellites) {
      if (s.norad_id == id) e.spec = s;
    }
    out.push_back(std::move(e));
  }
  return out;
}

Bundle make_bundle(PerformanceTable table, bool simplify) {
  Bundle b;
  const std::string text = table_to_json(table);
  b.bundle_id = fnv1a64_hex(text);
  b.table = std::make_shared<const PerformanceTable>(std::move(table));
  b.instance = assemble(b.table, simplify);
  return b;
}

Bundle run_scenario(const RunConfig& config, std::span<const Request> db) {
  const auto sats = load_satellites(config);
  if (db.empty()) {
    spdlog::warn("customer database is empty; writing an empty scenario bundle");
    PerformanceTable t;
    t.horizon = config.horizon;
    t.satellites = sats;
    t.swath_reference_km = sats.front().spec.swath;
    for (const auto& s : sats) t.swath_reference_km = std::min(t.swath_reference_km, s.spec.swath);
    return make_bundle(std::move(t), config.simplify);
  }
  ScenarioOptions opts;
  opts.keep_all_steps = config.keep_all_steps;
  opts.workers = config.workers;
  return make_bundle(enumerate_attempts(db, sats, config.horizon, config.clouds, opts), config.simplify);
}

Schedule run_solve(Bundle& bundle, const RunConfig& config) {
  ProblemInstance& inst = bundle.instance;
  if (config.solver == SolveMethod::kExternal) {
    throw RefusedError("external solvers are not linked; feed problem.lp to a MILP tool instead");
  }
  if (config.solver == SolveMethod::kExact && inst.simplified) {
    throw RefusedError("the exact solver needs pairwise maneuver rows; rerun the scenario with --simplify false");
  }
  if (inst.original_count() > 0) {
    attach_scores(inst, score(config.scoring, criteria_matrix(inst), config.preferences));
  }
  switch (config.solver) {
    case SolveMethod::kGreedy: return solve_greedy(inst, config.seed);
    case SolveMethod::kElpa: return solve_elpa(inst);
    case SolveMethod::kExact: return solve_exact(inst, {config.time_limit_s});
    case SolveMethod::kExternal: break;
  }
  throw RefusedError("unsupported solver");
}

void write_bundle(const std::filesystem::path& dir, const Bundle& bundle) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_table(dir / kTableFile, *bundle.table);
  write_table_binary(dir / kTableBinaryFile, *bundle.table);
  detail::write_file_atomic(dir / kInstanceFile, instance_to_json(bundle.instance, bundle.bundle_id));
  export_lp(bundle.instance, dir / kLpFile);
}

Bundle read_bundle(const std::filesystem::path& dir) {
  const std::string table_text = detail::read_file(dir / kTableFile);
  Bundle b;
  b.bundle_id = fnv1a64_hex(table_text);
  auto table = table_from_json(table_text);
  validate(table);
  b.table = std::make_shared<const PerformanceTable>(std::move(table));
  std::string instance_bundle;
  b.instance = instance_from_json(detail::read_file(dir / kInstanceFile), &instance_bundle);
  if (instance_bundle != b.bundle_id) {
    throw ValidationError("instance.json was built from a different table (bundle " + instance_bundle + ", table " +
                          b.bundle_id + ")");
  }
  b.instance.table = b.table;
  validate(b.instance);
  return b;
}

Schedule read_solution(const std::filesystem::path& path, const Bundle& bundle) {
  std::string id;
  Schedule s = schedule_from_json(detail::read_file(path), &id);
  if (id != bundle.bundle_id) {
    throw ValidationError("solution belongs to bundle " + id + ", not " + bundle.bundle_id);
  }
  const auto check = check_feasible(bundle.instance, s.selected);
  if (!check.feasible) {
    throw ValidationError("solution violates " + std::string(to_string(check.kind)) + "_row " +
                          std::to_string(check.row));
  }
  return s;
}

void write_solution(const std::filesystem::path& path, const Bundle& bundle, const Schedule& schedule,
                    bool reproducible) {
  Schedule out = schedule;
  if (reproducible) out.runtime_s = 0.0;
  detail::write_file_atomic(path, schedule_to_json(bundle.instance, out, bundle.bundle_id));
}

PipelineArtifacts run_all(const RunConfig& config) {
  validate(config);
  PipelineArtifacts a;
  const auto& dir = config.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  a.db = dir / "customer_db.jsonl";
  a.bundle_dir = dir / "bundle";
  a.solution = dir / "solution.json";
  a.map_html = dir / "map.html";
  a.map_geojson = dir / "map.geojson";
  a.report_json = dir / "report.json";
  a.report_markdown = dir / "report.md";

  const auto db = run_customer_db(config);
  write_db(a.db, db);
  Bundle bundle = run_scenario(config, db);
  write_bundle(a.bundle_dir, bundle);
  const Schedule schedule = run_solve(bundle, config);
  spdlog::info("{}: {} acquisitions, objective {:.4f}, {:.3f} s", to_string(schedule.method),
               schedule.selected.size(), schedule.objective, schedule.runtime_s);
  write_solution(a.solution, bundle, schedule, config.reproducible);
  MapOptions map;
  map.reproducible = config.reproducible;
  export_map(*bundle.table, bundle.instance, schedule, a.map_html, map);
  const auto report = evaluate(*bundle.table, bundle.instance, schedule);
  export_report(report, a.report_json, ReportFormat::kJson);
  export_report(report, a.report_markdown, ReportFormat::kMarkdown);
  detail::write_file_atomic(dir / "config.json", config_to_json(config));
  return a;
}

}  // namespace eos
