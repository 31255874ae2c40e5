// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

// Runs the eos executable as a subprocess and checks exit codes and files.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "support/fixtures.hpp"

namespace eos {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("eos_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  // Exit status of `eos <args>`; output goes to a log file in the temp dir.
  static int run(const std::string& args) {
    const std::string cmd = std::string(EOS_CLI_PATH) + " --log-level error " + args + " >>" +
                            (dir_ / "cli.log").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string p(const std::string& name) { return (dir_ / name).string(); }

  static int line_count(const fs::path& path) {
    std::ifstream in(path);
    int n = 0;
    for (std::string line; std::getline(in, line);) n += !line.empty();
    return n;
  }

  // Default 300-request database and its simplified bundle, made once.
  static const std::string& default_bundle() {
    static const std::string bundle = [] {
      EXPECT_EQ(run("customer-db --out " + p("db300.jsonl")), 0);
      EXPECT_EQ(run("scenario --db " + p("db300.jsonl") + " --out-dir " + p("bundle300")), 0);
      return p("bundle300");
    }();
    return bundle;
  }

  static fs::path dir_;
};

fs::path Cli::dir_;

TEST_F(Cli, CustomerDbSizes) {
  EXPECT_EQ(run("customer-db --out " + p("db_default.jsonl")), 0);
  EXPECT_EQ(line_count(p("db_default.jsonl")), 300);
  EXPECT_EQ(run("customer-db --n 1 --out " + p("db1.jsonl")), 0);
  EXPECT_EQ(line_count(p("db1.jsonl")), 1);
  EXPECT_EQ(run("customer-db --n 5 --seed 3 --out " + p("db5.jsonl") + " --map " + p("db5.html")), 0);
  EXPECT_TRUE(fs::exists(p("db5.html")));
  EXPECT_TRUE(fs::exists(p("db5.geojson")));
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("customer-db --seed abc --out " + p("x.jsonl")), 2);
  EXPECT_FALSE(fs::exists(p("x.jsonl")));
  EXPECT_EQ(run("customer-db --n -4"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("solve"), 2);  // --bundle is required
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, ScenarioInputErrors) {
  ASSERT_EQ(run("customer-db --n 3 --out " + p("db3.jsonl")), 0);
  EXPECT_EQ(run("scenario --db " + p("db3.jsonl") + " --tle-file " + p("missing.tle") + " --out-dir " + p("b_missing")),
            5);
  EXPECT_FALSE(fs::exists(p("b_missing")));
  EXPECT_EQ(run("scenario --db " + p("no_such_db.jsonl") + " --out-dir " + p("b_nodb")), 5);
  EXPECT_EQ(run("scenario --db " + p("db3.jsonl") + " --norad 11111 --out-dir " + p("b_norad")), 3);
  EXPECT_EQ(run("scenario --db " + p("db3.jsonl") + " --granularity 0 --out-dir " + p("b_gran")), 3);
  EXPECT_EQ(run("scenario --db " + p("db3.jsonl") + " --solver exact --out-dir " + p("b_refused")), 4);
  EXPECT_FALSE(fs::exists(p("b_refused")));
}

TEST_F(Cli, EmptyDatabase) {
  ASSERT_EQ(run("customer-db --n 0 --out " + p("db0.jsonl")), 0);
  EXPECT_EQ(line_count(p("db0.jsonl")), 0);
  EXPECT_EQ(run("scenario --db " + p("db0.jsonl") + " --out-dir " + p("bundle0")), 0);
  EXPECT_TRUE(fs::exists(p("bundle0") + "/table.json"));
  ASSERT_EQ(run("solve --bundle " + p("bundle0") + " --out " + p("sol0.json")), 0);
  ASSERT_EQ(run("evaluate --bundle " + p("bundle0") + " --solution " + p("sol0.json") + " --out " + p("rep0.json") +
                " --out-md " + p("rep0.md")),
            0);
  const auto rep = nlohmann::json::parse(eos::testing::read_text(p("rep0.json")));
  EXPECT_EQ(rep["solution"]["acquisitions"], 0);
  EXPECT_TRUE(rep["solution"]["avg_angle"].is_null());
}

TEST_F(Cli, ExactRefusedOnSimplifiedBundle) {
  EXPECT_EQ(run("solve --bundle " + default_bundle() + " --method exact --out " + p("exact.json")), 4);
  EXPECT_FALSE(fs::exists(p("exact.json")));
  EXPECT_EQ(run("solve --bundle " + default_bundle() + " --method external --out " + p("ext.json")), 4);
}

TEST_F(Cli, GreedyReproducible) {
  // Greedy needs pairwise maneuver rows.
  EXPECT_EQ(run("solve --bundle " + default_bundle() + " --method greedy --out " + p("g0.json")), 4);
  ASSERT_EQ(run("scenario --db " + p("db300.jsonl") + " --simplify false --solver greedy --out-dir " + p("pairwise")), 0);
  const std::string base = "--reproducible solve --bundle " + p("pairwise") + " --method greedy --seed 5 --out ";
  ASSERT_EQ(run(base + p("g1.json")), 0);
  ASSERT_EQ(run(base + p("g2.json")), 0);
  const std::string a = eos::testing::read_text(p("g1.json"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, eos::testing::read_text(p("g2.json")));
  const auto doc = nlohmann::json::parse(a);
  EXPECT_EQ(doc["method"], "greedy");
  EXPECT_EQ(doc["runtime_s"], 0.0);
}

TEST_F(Cli, SolveVisualizeEvaluate) {
  ASSERT_EQ(run("solve --bundle " + default_bundle() + " --method elpa --scoring topsis --out " + p("elpa.json")), 0);
  const auto sol = nlohmann::json::parse(eos::testing::read_text(p("elpa.json")));
  EXPECT_TRUE(sol["feasible"].get<bool>());
  EXPECT_GT(sol["selected"].size(), 0u);
  EXPECT_EQ(run("visualize --bundle " + default_bundle() + " --solution " + p("elpa.json") + " --out " + p("map.html")),
            0);
  EXPECT_TRUE(fs::exists(p("map.html")));
  EXPECT_TRUE(fs::exists(p("map.geojson")));
  EXPECT_EQ(run("evaluate --bundle " + default_bundle() + " --solution " + p("elpa.json") + " --out " + p("rep.json") +
                " --out-md " + p("rep.md")),
            0);
  const auto rep = nlohmann::json::parse(eos::testing::read_text(p("rep.json")));
  EXPECT_EQ(rep["solution"]["acquisitions"].get<std::size_t>(), sol["selected"].size());
}

TEST_F(Cli, MismatchedBundleAndSolution) {
  ASSERT_EQ(run("customer-db --n 40 --seed 8 --out " + p("db40.jsonl")), 0);
  ASSERT_EQ(run("scenario --db " + p("db40.jsonl") + " --out-dir " + p("bundle40")), 0);
  ASSERT_EQ(run("solve --bundle " + p("bundle40") + " --out " + p("sol40.json")), 0);
  EXPECT_EQ(run("visualize --bundle " + default_bundle() + " --solution " + p("sol40.json") + " --out " + p("mm.html")),
            3);
  EXPECT_FALSE(fs::exists(p("mm.html")));
  EXPECT_EQ(run("evaluate --bundle " + default_bundle() + " --solution " + p("sol40.json") + " --out " + p("mm.json")),
            3);
}

TEST_F(Cli, AllWithConfigFile) {
  {
    std::ofstream cfg(p("cfg.json"));
    cfg << R"({"n_requests": 120, "seed": 4, "solver": "exact", "simplify": false, "time_limit_s": 10})";
  }
  ASSERT_EQ(run("--reproducible --config " + p("cfg.json") + " -o " + p("all_out") + " all --method greedy"), 0);
  for (auto name : {"customer_db.jsonl", "bundle/table.json", "bundle/instance.json", "bundle/problem.lp",
                    "solution.json", "map.html", "map.geojson", "report.json", "report.md", "config.json"}) {
    EXPECT_TRUE(fs::exists(p("all_out") + "/" + name)) << name;
  }
  EXPECT_EQ(line_count(p("all_out") + "/customer_db.jsonl"), 120);
  // Flags win over the config file.
  const auto sol = nlohmann::json::parse(eos::testing::read_text(p("all_out") + "/solution.json"));
  EXPECT_EQ(sol["method"], "greedy");

  {
    std::ofstream cfg(p("bad_cfg.json"));
    cfg << R"({"n_requests": "many"})";
  }
  EXPECT_EQ(run("--config " + p("bad_cfg.json") + " all"), 3);
  EXPECT_EQ(run("--config " + p("absent_cfg.json") + " all"), 5);
}

}  // namespace
}  // namespace eos
