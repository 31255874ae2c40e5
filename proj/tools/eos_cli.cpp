// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

// eos: customer-db | scenario | solve | visualize | evaluate | all
//
// Exit codes: 0 ok, 2 usage, 3 invalid input, 4 refused combination, 5 I/O.

#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eos/demand.hpp"
#include "eos/errors.hpp"
#include "eos/pipeline.hpp"
#include "eos/report.hpp"
#include "eos/table_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitRefused = 4;
constexpr int kExitIo = 5;

// Raw flag values; only options given on the command line override the
// config file.
struct Flags {
  std::string config_path;
  std::string output_dir;
  std::string log_level = "info";
  bool reproducible = false;

  std::uint64_t seed = 0;
  int n_requests = 0;
  std::vector<int> norad_ids;
  std::string tle_file;
  std::string tle_url;
  std::string tle_cache_dir;
  std::string start;
  double hours = 0.0;
  double granularity = 0.0;
  bool simplify = true;
  bool keep_all_steps = false;
  std::string cloud_mode;
  std::uint64_t cloud_seed = 0;
  std::string weather_endpoint;
  int workers = 0;
  std::string scoring;
  std::string prefs_path;
  std::string method;
  double time_limit = 0.0;

  std::string db_path;
  std::string bundle_dir;
  std::string solution_path;
  std::string out;
  std::string out_md;
  std::string map_path;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw eos::IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli {
 public:
  Cli() : app_("Earth observation satellite acquisition planning") {
    app_.require_subcommand(1);
    app_.add_option("--config", f_.config_path, "JSON run configuration; flags win");
    app_.add_option("-o,--output-dir", f_.output_dir, "directory for default output paths");
    app_.add_option("--log-level", f_.log_level, "trace, debug, info, warn, error or off")
        ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));
    app_.add_flag("--reproducible", f_.reproducible, "zero runtimes and omit timestamps in outputs");

    db_ = app_.add_subcommand("customer-db", "generate a seeded customer request database");
    add_db_options(db_);
    db_->add_option("--out", f_.out, "JSON-lines output (default <output-dir>/customer_db.jsonl)");
    db_->add_option("--map", f_.map_path, "optional HTML map of all requests");

    scenario_ = app_.add_subcommand("scenario", "enumerate attempts and build the binary program");
    scenario_->add_option("--db", f_.db_path, "customer database (JSON lines)")->required();
    add_scenario_options(scenario_);
    scenario_->add_option("--out-dir", f_.bundle_dir, "bundle directory (default <output-dir>/bundle)");

    solve_ = app_.add_subcommand("solve", "score and solve a scenario bundle");
    solve_->add_option("--bundle", f_.bundle_dir, "scenario bundle directory")->required();
    add_solve_options(solve_);
    solve_->add_option("--out", f_.out, "solution file (default <output-dir>/solution.json)");

    visualize_ = app_.add_subcommand("visualize", "write the HTML map and GeoJSON sidecar");
    visualize_->add_option("--bundle", f_.bundle_dir, "scenario bundle directory")->required();
    visualize_->add_option("--solution", f_.solution_path, "solution file")->required();
    visualize_->add_option("--out", f_.out, "HTML output (default <output-dir>/map.html)");

    evaluate_ = app_.add_subcommand("evaluate", "compute the performance report");
    evaluate_->add_option("--bundle", f_.bundle_dir, "scenario bundle directory")->required();
    evaluate_->add_option("--solution", f_.solution_path, "solution file")->required();
    evaluate_->add_option("--out", f_.out, "JSON report (default <output-dir>/report.json)");
    evaluate_->add_option("--out-md", f_.out_md, "markdown report (default <output-dir>/report.md)");

    all_ = app_.add_subcommand("all", "run every stage into the output directory");
    add_db_options(all_);
    add_scenario_options(all_);
    add_solve_options(all_);
  }

  int run(int argc, char** argv) {
    try {
      app_.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app_.exit(e);
      return code == 0 ? kExitOk : kExitUsage;
    }
    spdlog::set_level(spdlog::level::from_str(f_.log_level));
    spdlog::set_pattern("[%l] %v");
    try {
      const eos::RunConfig cfg = config();
      if (*db_) return cmd_customer_db(cfg);
      if (*scenario_) return cmd_scenario(cfg);
      if (*solve_) return cmd_solve(cfg);
      if (*visualize_) return cmd_visualize(cfg);
      if (*evaluate_) return cmd_evaluate(cfg);
      if (*all_) return cmd_all(cfg);
    } catch (const eos::RefusedError& e) {
      spdlog::error("refused: {}", e.what());
      return kExitRefused;
    } catch (const eos::IoError& e) {
      spdlog::error("I/O: {}", e.what());
      return kExitIo;
    } catch (const eos::Error& e) {
      spdlog::error("invalid input: {}", e.what());
      return kExitInvalid;
    }
    return kExitUsage;
  }

 private:
  void add_db_options(CLI::App* cmd) {
    opts_.push_back(cmd->add_option("--n", f_.n_requests, "number of requests")->check(CLI::NonNegativeNumber));
    opts_.push_back(cmd->add_option("--seed", f_.seed, "random seed"));
  }

  void add_scenario_options(CLI::App* cmd) {
    opts_.push_back(cmd->add_option("--norad", f_.norad_ids, "NORAD catalog ids")->delimiter(','));
    opts_.push_back(cmd->add_option("--tle-file", f_.tle_file, "TLE file (2- or 3-line sets)"));
    opts_.push_back(cmd->add_option("--tle-url", f_.tle_url, "TLE URL template containing {norad_id}"));
    opts_.push_back(cmd->add_option("--tle-cache", f_.tle_cache_dir, "TLE download cache directory"));
    opts_.push_back(cmd->add_option("--start", f_.start, "horizon start, ISO-8601 UTC"));
    opts_.push_back(cmd->add_option("--hours", f_.hours, "horizon length in hours"));
    opts_.push_back(cmd->add_option("--granularity", f_.granularity, "time step in seconds"));
    opts_.push_back(cmd->add_option("--simplify", f_.simplify, "group maneuver conflicts (elpa only)"));
    opts_.push_back(cmd->add_flag("--keep-all-steps", f_.keep_all_steps, "one attempt per time step"));
    opts_.push_back(cmd->add_option("--cloud-mode", f_.cloud_mode, "synthetic or http")
                        ->check(CLI::IsMember({"synthetic", "http"})));
    opts_.push_back(cmd->add_option("--cloud-seed", f_.cloud_seed, "synthetic cloud seed"));
    opts_.push_back(cmd->add_option("--weather-endpoint", f_.weather_endpoint, "point forecast URL"));
    opts_.push_back(cmd->add_option("--workers", f_.workers, "threads, 0 = all cores"));
    if (cmd != all_) {
      opts_.push_back(cmd->add_option("--solver", f_.method, "solver the bundle is meant for")
                          ->check(CLI::IsMember({"greedy", "elpa", "exact"})));
    }
  }

  void add_solve_options(CLI::App* cmd) {
    opts_.push_back(cmd->add_option("--method", f_.method, "greedy, elpa or exact")
                        ->check(CLI::IsMember({"greedy", "elpa", "exact", "external"})));
    opts_.push_back(cmd->add_option("--scoring", f_.scoring, "wsa, topsis or electre3")
                        ->check(CLI::IsMember({"wsa", "topsis", "electre3"})));
    opts_.push_back(cmd->add_option("--prefs", f_.prefs_path, "preference model JSON"));
    opts_.push_back(cmd->add_option("--time-limit", f_.time_limit, "exact solver limit in seconds"));
    if (cmd == all_) return;
    opts_.push_back(cmd->add_option("--seed", f_.seed, "greedy seed"));
  }

  bool given(const std::string& name) const {
    for (const auto* o : opts_) {
      if (o->count() > 0 && o->check_name(name)) return true;
    }
    return false;
  }

  eos::RunConfig config() const {
    eos::RunConfig c;
    if (!f_.config_path.empty()) c = eos::config_from_json(slurp(f_.config_path));
    if (!f_.output_dir.empty()) c.output_dir = f_.output_dir;
    if (f_.reproducible) c.reproducible = true;
    if (given("--seed")) c.seed = f_.seed;
    if (given("--n")) c.n_requests = f_.n_requests;
    if (given("--norad")) c.norad_ids = f_.norad_ids;
    if (given("--tle-file")) c.tle_file = f_.tle_file;
    if (given("--tle-url")) c.tle_url = f_.tle_url;
    if (given("--tle-cache")) c.tle_cache_dir = f_.tle_cache_dir;
    if (given("--start")) c.horizon.start = eos::parse_iso8601(f_.start);
    if (given("--hours")) c.horizon.duration_hours = f_.hours;
    if (given("--granularity")) c.horizon.granularity_s = f_.granularity;
    if (given("--simplify")) c.simplify = f_.simplify;
    if (given("--keep-all-steps")) c.keep_all_steps = f_.keep_all_steps;
    if (given("--cloud-mode")) {
      c.clouds.mode = f_.cloud_mode == "http" ? eos::CloudSource::Mode::kHttpPointForecast
                                              : eos::CloudSource::Mode::kSynthetic;
    }
    if (given("--cloud-seed")) c.clouds.seed = f_.cloud_seed;
    if (given("--weather-endpoint")) c.clouds.endpoint = f_.weather_endpoint;
    if (given("--workers")) c.workers = f_.workers;
    if (given("--scoring")) c.scoring = eos::parse_scoring_method(f_.scoring);
    if (given("--prefs")) c.preferences = eos::parse_preferences(slurp(f_.prefs_path));
    if (given("--method") || given("--solver")) c.solver = eos::parse_solve_method(f_.method);
    if (given("--time-limit")) c.time_limit_s = f_.time_limit;
    return c;
  }

  std::filesystem::path out_or(const std::string& flag, const eos::RunConfig& c, const char* name) const {
    return flag.empty() ? c.output_dir / name : std::filesystem::path(flag);
  }

  static void ensure_parent(const std::filesystem::path& p) {
    if (!p.has_parent_path()) return;
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw eos::IoError("cannot create " + p.parent_path().string() + ": " + ec.message());
  }

  int cmd_customer_db(const eos::RunConfig& c) {
    eos::validate(c);
    const auto db = eos::run_customer_db(c);
    const auto out = out_or(f_.out, c, "customer_db.jsonl");
    ensure_parent(out);
    eos::write_db(out, db);
    if (!f_.map_path.empty()) {
      eos::MapOptions mo;
      mo.reproducible = c.reproducible;
      mo.title = "EOS customer database";
      ensure_parent(f_.map_path);
      eos::export_request_map(db, f_.map_path, mo);
    }
    std::printf("%zu requests -> %s\n", db.size(), out.string().c_str());
    return kExitOk;
  }

  int cmd_scenario(const eos::RunConfig& c) {
    eos::validate(c);
    const auto db = eos::read_db(f_.db_path);
    const auto bundle = eos::run_scenario(c, db);
    const auto dir = out_or(f_.bundle_dir, c, "bundle");
    eos::write_bundle(dir, bundle);
    std::printf("%zu attempts, %zu stereo pairs, %zu constraints -> %s (bundle %s)\n",
                bundle.table->attempts.size(), bundle.table->stereo_pairs.size(),
                eos::constraint_count(bundle.instance), dir.string().c_str(), bundle.bundle_id.c_str());
    return kExitOk;
  }

  int cmd_solve(eos::RunConfig c) {
    auto bundle = eos::read_bundle(f_.bundle_dir);
    c.simplify = bundle.instance.simplified;
    eos::validate(c);
    const auto schedule = eos::run_solve(bundle, c);
    const auto out = out_or(f_.out, c, "solution.json");
    ensure_parent(out);
    eos::write_solution(out, bundle, schedule, c.reproducible);
    std::printf("%s: %zu acquisitions, objective %.6f, %.3f s%s -> %s\n",
                std::string(eos::to_string(schedule.method)).c_str(), schedule.selected.size(), schedule.objective,
                schedule.runtime_s, schedule.method == eos::SolveMethod::kExact && !schedule.optimal
                                        ? " (time limit, not proven optimal)"
                                        : "",
                out.string().c_str());
    return kExitOk;
  }

  int cmd_visualize(const eos::RunConfig& c) {
    const auto bundle = eos::read_bundle(f_.bundle_dir);
    const auto schedule = eos::read_solution(f_.solution_path, bundle);
    const auto out = out_or(f_.out, c, "map.html");
    ensure_parent(out);
    eos::MapOptions mo;
    mo.reproducible = c.reproducible;
    eos::export_map(*bundle.table, bundle.instance, schedule, out, mo);
    std::printf("map -> %s\n", out.string().c_str());
    return kExitOk;
  }

  int cmd_evaluate(const eos::RunConfig& c) {
    const auto bundle = eos::read_bundle(f_.bundle_dir);
    const auto schedule = eos::read_solution(f_.solution_path, bundle);
    const auto report = eos::evaluate(*bundle.table, bundle.instance, schedule);
    const auto json = out_or(f_.out, c, "report.json");
    const auto md = out_or(f_.out_md, c, "report.md");
    ensure_parent(json);
    ensure_parent(md);
    eos::export_report(report, json, eos::ReportFormat::kJson);
    eos::export_report(report, md, eos::ReportFormat::kMarkdown);
    std::cout << eos::report_to_markdown(report);
    return kExitOk;
  }

  int cmd_all(const eos::RunConfig& c) {
    const auto a = eos::run_all(c);
    std::cout << slurp(a.report_markdown.string());
    std::printf("artifacts in %s\n", c.output_dir.string().c_str());
    return kExitOk;
  }

  CLI::App app_;
  Flags f_;
  std::vector<CLI::Option*> opts_;
  CLI::App* db_ = nullptr;
  CLI::App* scenario_ = nullptr;
  CLI::App* solve_ = nullptr;
  CLI::App* visualize_ = nullptr;
  CLI::App* evaluate_ = nullptr;
  CLI::App* all_ = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  return cli.run(argc, argv);
}
