// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "eos/errors.hpp"
#include "eos/report.hpp"
#include "support/fixtures.hpp"
#include "support/hand_table.hpp"

namespace eos {
namespace {

using nlohmann::json;

const std::string kDash = "—";

// Requests: r0 mono, r1 two strips, r2 mono and never selected.
struct Oracle {
  eos::testing::HandTable h;
  ProblemInstance inst;

  Oracle() {
    const int r0 = h.request(false, 1, 100.0, 500.0, 1);
    const int r1 = h.request(false, 2, 400.0, 900.0, 3);
    const int r2 = h.request(false, 1, 50.0, 300.0, 2);
    set(h.attempt(r0, 0, 5.0), 0.05, 30.0);
    set(h.attempt(r1, 100, 12.0, 1.0, 0, StereoRole::kMono, 0), 0.20, 40.0);
    set(h.attempt(r1, 200, 25.0, 1.0, 0, StereoRole::kMono, 1), 0.35, 50.0);
    set(h.attempt(r2, 300, 8.0), 0.15, 45.0);
    inst = assemble(h.shared(), false);
  }

  void set(int id, double cloud, double sun) {
    h.at(id).cloud_cover = cloud;
    h.at(id).sun_elev = sun;
  }

  Schedule schedule(std::vector<int> cols) const {
    Schedule s;
    s.selected = std::move(cols);
    s.feasible = true;
    return s;
  }
};

TEST(Report, HandBuiltOracle) {
  const Oracle o;
  const EvaluationReport rep = evaluate(*o.inst.table, o.inst, o.schedule({0, 1, 2}));
  const auto& sc = rep.scenario;
  EXPECT_EQ(sc.requests, 3);
  EXPECT_EQ(sc.attempts, 4);
  EXPECT_EQ(sc.constraints_pairwise, 4);  // 3 b_rows + 1 m_row, no maneuver conflicts
  EXPECT_EQ(sc.constraints_simplified, 4);
  EXPECT_DOUBLE_EQ(*sc.avg_angle, 12.5);
  EXPECT_DOUBLE_EQ(*sc.avg_area, 237.5);
  EXPECT_DOUBLE_EQ(*sc.avg_price, 650.0);
  EXPECT_DOUBLE_EQ(*sc.avg_sun_elev, 41.25);
  EXPECT_NEAR(*sc.avg_cloud, 18.75, 1e-12);
  EXPECT_DOUBLE_EQ(*sc.avg_priority, 2.25);

  const auto& so = rep.solution;
  EXPECT_EQ(so.acquisitions, 3);
  EXPECT_EQ(so.requests_acquired, 2);
  EXPECT_DOUBLE_EQ(so.total_profit, 1400.0);
  EXPECT_NEAR(*so.avg_cloud, 20.0, 1e-12);
  EXPECT_EQ(so.cloud_below_10, 1);
  EXPECT_EQ(so.cloud_above_30, 1);
  EXPECT_NEAR(*so.avg_angle, 14.0, 1e-12);
  EXPECT_EQ(so.angle_below_10, 1);
  EXPECT_EQ(so.angle_above_30, 0);
  EXPECT_NEAR(*so.avg_priority, 7.0 / 3.0, 1e-12);
  EXPECT_EQ(so.priority_counts, (std::array<int, 4>{1, 0, 1, 0}));
  EXPECT_NEAR(*so.avg_sun_elev, 40.0, 1e-12);
  EXPECT_DOUBLE_EQ(so.total_area, 500.0);

  // One strip of the two-strip request counts half its area.
  EXPECT_DOUBLE_EQ(evaluate(*o.inst.table, o.inst, o.schedule({0, 1})).solution.total_area, 300.0);
}

TEST(Report, EmptySchedule) {
  const Oracle o;
  const EvaluationReport rep = evaluate(*o.inst.table, o.inst, o.schedule({}));
  EXPECT_EQ(rep.solution.acquisitions, 0);
  EXPECT_DOUBLE_EQ(rep.solution.total_profit, 0.0);
  EXPECT_FALSE(rep.solution.avg_cloud);
  EXPECT_FALSE(rep.solution.avg_angle);
  EXPECT_FALSE(rep.solution.avg_priority);
  EXPECT_FALSE(rep.solution.avg_sun_elev);
  EXPECT_TRUE(rep.scenario.avg_angle);

  eos::testing::HandTable none;
  const ProblemInstance empty = assemble(none.shared(), true);
  const EvaluationReport nothing = evaluate(*empty.table, empty, o.schedule({}));
  EXPECT_EQ(nothing.scenario.attempts, 0);
  EXPECT_FALSE(nothing.scenario.avg_area);
}

TEST(Report, StereoProfitCountedOnce) {
  eos::testing::HandTable h;
  const int r = h.request(true, 1, 200.0, 1200.0, 4);
  const int f = h.attempt(r, 0, 5.0, 1.0, 0, StereoRole::kStereoFirst);
  const int s = h.attempt(r, 90, 5.0, 1.0, 0, StereoRole::kStereoSecond);
  h.pair(f, s);
  const ProblemInstance inst = assemble(h.shared(), false);
  Schedule sch;
  sch.selected = {f, s};
  const auto rep = evaluate(*inst.table, inst, sch);
  EXPECT_DOUBLE_EQ(rep.solution.total_profit, 1200.0);
  EXPECT_EQ(rep.solution.priority_counts, (std::array<int, 4>{0, 0, 0, 1}));
  EXPECT_EQ(rep.solution.acquisitions, 2);
}

TEST(Report, RejectsInfeasibleSchedule) {
  eos::testing::HandTable h;
  h.attempt(h.request(), 0, 0.0);
  h.attempt(h.request(), 1, 30.0);
  const ProblemInstance inst = assemble(h.shared(), false);
  Schedule s;
  s.selected = {0, 1};
  EXPECT_THROW(evaluate(*inst.table, inst, s), ValidationError);
}

TEST(Report, JsonRoundTrip) {
  const Oracle o;
  for (const auto& cols : {std::vector<int>{0, 1, 2}, std::vector<int>{}}) {
    const EvaluationReport rep = evaluate(*o.inst.table, o.inst, o.schedule(cols));
    const std::string text = report_to_json(rep);
    EXPECT_EQ(report_from_json(text), rep);
    EXPECT_EQ(report_to_json(report_from_json(text)), text);
  }
  EXPECT_THROW(report_from_json("{}"), ParseError);
  EXPECT_THROW(report_from_json("nope"), ParseError);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Report, Markdown) {
  const Oracle o;
  const auto full = lines_of(report_to_markdown(evaluate(*o.inst.table, o.inst, o.schedule({0, 1, 2}))));
  const std::vector<std::string> metrics{"Requests (#)",       "Attempts (#)",        "Constraints (#)",
                                         "Avg. angle (deg)",   "Avg. area (km2)",     "Avg. price (euro)",
                                         "Avg. sun elevation (deg)", "Avg. cloud (%)", "Avg. priority",
                                         "Acquisitions (#)",   "Total profit (euro)", "Cloud < 10% (#)",
                                         "Cloud > 30% (#)",    "Angle < 10 deg (#)",  "Angle > 30 deg (#)",
                                         "Priority 1 (#)",     "Priority 2 (#)",      "Priority 3 (#)",
                                         "Priority 4 (#)",     "Total area (km2)"};
  ASSERT_EQ(full.size(), metrics.size() + 2);
  EXPECT_EQ(full[0], "| Metric | Scenario | Solution |");
  for (std::size_t k = 0; k < metrics.size(); ++k) EXPECT_EQ(full[k + 2].rfind("| " + metrics[k] + " |", 0), 0u);
  EXPECT_EQ(full[2], "| Requests (#) | 3 | 2 |");
  EXPECT_EQ(full[4], "| Constraints (#) | 4 (4) | " + kDash + " |");
  EXPECT_EQ(full[5], "| Avg. angle (deg) | 12.50 | 14.00 |");

  const auto empty = lines_of(report_to_markdown(evaluate(*o.inst.table, o.inst, o.schedule({}))));
  EXPECT_EQ(empty[5], "| Avg. angle (deg) | 12.50 | " + kDash + " |");
  EXPECT_EQ(empty[9], "| Avg. cloud (%) | 18.75 | " + kDash + " |");
}

TEST(Report, ExportFiles) {
  const Oracle o;
  const EvaluationReport rep = evaluate(*o.inst.table, o.inst, o.schedule({0}));
  const auto dir = std::filesystem::temp_directory_path() / "eos_report_test";
  std::filesystem::create_directories(dir);
  export_report(rep, dir / "r.json", ReportFormat::kJson);
  export_report(rep, dir / "r.md", ReportFormat::kMarkdown);
  EXPECT_EQ(report_from_json(eos::testing::read_text(dir / "r.json")), rep);
  EXPECT_EQ(eos::testing::read_text(dir / "r.md"), report_to_markdown(rep));
  std::filesystem::remove_all(dir);
}

// Structural checks from RFC 7946 for the subset the map uses.
void check_geojson(const json& doc) {
  ASSERT_EQ(doc.at("type"), "FeatureCollection");
  ASSERT_TRUE(doc.at("features").is_array());
  for (const auto& f : doc["features"]) {
    ASSERT_EQ(f.at("type"), "Feature");
    ASSERT_TRUE(f.at("properties").is_object());
    for (const char* key : {"kind", "request_id", "attempt_id", "selected"}) ASSERT_TRUE(f["properties"].contains(key));
    const auto& g = f.at("geometry");
    auto position = [](const json& p) {
      ASSERT_TRUE(p.is_array());
      ASSERT_GE(p.size(), 2u);
      ASSERT_GE(p[0].get<double>(), -180.0);
      ASSERT_LE(p[0].get<double>(), 180.0);
      ASSERT_GE(p[1].get<double>(), -90.0);
      ASSERT_LE(p[1].get<double>(), 90.0);
    };
    if (g.at("type") == "Point") {
      position(g.at("coordinates"));
    } else {
      ASSERT_EQ(g.at("type"), "MultiLineString");
      for (const auto& line : g.at("coordinates")) {
        ASSERT_GE(line.size(), 2u);
        for (const auto& p : line) position(p);
      }
    }
  }
}

TEST(Report, GeoJsonCountsAndConsistency) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 10; ++k) {
    auto table = std::make_shared<PerformanceTable>(eos::testing::random_table(rng, {}));
    ProblemInstance inst = assemble(table, false);
    eos::testing::random_scores(inst, rng);
    const Schedule s = solve_exact(inst);
    std::set<int> chosen;
    for (int c : s.selected) chosen.insert(inst.column_attempt[static_cast<std::size_t>(c)]);
    const std::vector<int> ids(chosen.begin(), chosen.end());
    const json doc = json::parse(map_geojson(*table, ids));
    check_geojson(doc);
    const auto& features = doc["features"];
    EXPECT_EQ(features.size(), table->satellites.size() + table->requests.size() + table->attempts.size() + ids.size());
    std::set<int> acquired, highlighted;
    for (const auto& f : features) {
      const auto& p = f["properties"];
      if (p["kind"] == "acquisition") acquired.insert(p["attempt_id"].get<int>());
      if (p["kind"] == "attempt" && p["selected"].get<bool>()) highlighted.insert(p["attempt_id"].get<int>());
    }
    EXPECT_EQ(acquired, chosen);
    EXPECT_EQ(highlighted, chosen);
  }
}

TEST(Report, EmptyScheduleMapAndHtml) {
  const Oracle o;
  const json doc = json::parse(map_geojson(*o.inst.table, std::vector<int>{}));
  check_geojson(doc);
  std::set<std::string> kinds;
  for (const auto& f : doc["features"]) kinds.insert(f["properties"]["kind"].get<std::string>());
  EXPECT_EQ(kinds, (std::set<std::string>{"track", "request", "attempt"}));
  EXPECT_THROW(map_geojson(*o.inst.table, std::vector<int>{99}), ValidationError);

  MapOptions opts;
  opts.reproducible = true;
  opts.title = "a <b> & c";
  const std::string html = map_html(doc.dump(), opts);
  EXPECT_EQ(html.find("generated"), std::string::npos);
  EXPECT_NE(html.find("<title>a &lt;b&gt; &amp; c</title>"), std::string::npos);
  EXPECT_NE(html.find("L.geoJSON"), std::string::npos);
  EXPECT_EQ(html.find("src=\"http"), std::string::npos);  // no remote scripts
  EXPECT_EQ(map_html(doc.dump(), opts), html);
  EXPECT_NE(map_html(doc.dump()).find("<!-- generated "), std::string::npos);
}

TEST(Report, ExportMapWritesSidecar) {
  const Oracle o;
  const auto dir = std::filesystem::temp_directory_path() / "eos_map_test";
  std::filesystem::create_directories(dir);
  export_map(*o.inst.table, o.inst, o.schedule({0, 2}), dir / "m.html");
  const json doc = json::parse(eos::testing::read_text(dir / "m.geojson"));
  int acquisitions = 0;
  for (const auto& f : doc["features"]) acquisitions += f["properties"]["kind"] == "acquisition";
  EXPECT_EQ(acquisitions, 2);
  EXPECT_NE(eos::testing::read_text(dir / "m.html").find("FeatureCollection"), std::string::npos);

  export_request_map(o.inst.table->requests, dir / "req.html");
  const json req = json::parse(eos::testing::read_text(dir / "req.geojson"));
  check_geojson(req);
  EXPECT_EQ(req["features"].size(), 3u);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace eos
