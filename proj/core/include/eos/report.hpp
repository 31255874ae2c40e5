// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_REPORT_HPP_
#define EOS_REPORT_HPP_

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "eos/problem.hpp"
#include "eos/scenario.hpp"
#include "eos/solve.hpp"

namespace eos {

// Averages are empty when their population is empty. Cloud figures are in
// percent.
struct ScenarioMetrics {
  int requests = 0;  // requests with at least one attempt
  int attempts = 0;
  int constraints_pairwise = 0;
  int constraints_simplified = 0;
  std::optional<double> avg_angle;
  std::optional<double> avg_area;
  std::optional<double> avg_price;
  std::optional<double> avg_sun_elev;
  std::optional<double> avg_cloud;
  std::optional<double> avg_priority;
  friend bool operator==(const ScenarioMetrics&, const ScenarioMetrics&) = default;
};

struct SolutionMetrics {
  int acquisitions = 0;
  int requests_acquired = 0;
  double total_profit = 0.0;
  std::optional<double> avg_cloud;
  int cloud_below_10 = 0;
  int cloud_above_30 = 0;
  std::optional<double> avg_angle;
  int angle_below_10 = 0;
  int angle_above_30 = 0;
  std::optional<double> avg_priority;
  std::array<int, 4> priority_counts{};  // priorities 1..4, distinct requests
  std::optional<double> avg_sun_elev;
  double total_area = 0.0;  // km^2, area/n_strips per distinct acquired strip
  friend bool operator==(const SolutionMetrics&, const SolutionMetrics&) = default;
};

struct EvaluationReport {
  ScenarioMetrics scenario;
  SolutionMetrics solution;
  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

// Throws ValidationError when the schedule is infeasible for the instance.
EvaluationReport evaluate(const PerformanceTable& table, const ProblemInstance& instance,
                          const Schedule& schedule);

enum class ReportFormat { kJson, kMarkdown };

std::string report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(std::string_view text);  // throws ParseError
// Metric | Scenario | Solution table; absent values render as an em dash.
std::string report_to_markdown(const EvaluationReport& report);
void export_report(const EvaluationReport& report, const std::filesystem::path& path, ReportFormat format);

struct MapOptions {
  double track_step_s = 60.0;
  bool reproducible = false;  // omit the generation timestamp
  std::string title = "EOS schedule";
};

// FeatureCollection with one feature per satellite track, request, attempt
// and selected attempt. Properties: kind (track, request, attempt,
// acquisition), request_id, attempt_id, selected.
std::string map_geojson(const PerformanceTable& table, std::span<const int> selected_attempts,
                        const MapOptions& options = {});
// Requests only, for a customer database without a scenario.
std::string request_geojson(std::span<const Request> requests);
// Self-contained Leaflet page drawing the GeoJSON.
std::string map_html(std::string_view geojson, const MapOptions& options = {});

// Writes html_path and the GeoJSON sidecar next to it (.geojson).
void export_map(const PerformanceTable& table, const ProblemInstance& instance, const Schedule& schedule,
                const std::filesystem::path& html_path, const MapOptions& options = {});
void export_request_map(std::span<const Request> requests, const std::filesystem::path& html_path,
                        const MapOptions& options = {});

}  // namespace eos

#endif  // EOS_REPORT_HPP_
