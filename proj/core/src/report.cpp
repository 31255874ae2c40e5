// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/report.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "eos/errors.hpp"
#include "file_util.hpp"
#include "json_util.hpp"

namespace eos {
namespace {

constexpr const char* kAbsent = "\u2014";

class Mean {
 public:
  void add(double x) {
    sum_ += x;
    ++n_;
  }
  std::optional<double> get() const {
    if (n_ == 0) return std::nullopt;
    return sum_ / static_cast<double>(n_);
  }

 private:
  double sum_ = 0.0;
  long n_ = 0;
};

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> opt_from(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

std::string fmt(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string fmt(const std::optional<double>& v, int decimals = 2) { return v ? fmt(*v, decimals) : kAbsent; }

}  // namespace

EvaluationReport evaluate(const PerformanceTable& table, const ProblemInstance& instance, const Schedule& schedule) {
  if (!check_feasible(instance, schedule.selected).feasible) {
    throw ValidationError("cannot evaluate an infeasible schedule");
  }
  EvaluationReport rep;
  auto& sc = rep.scenario;
  std::set<int> with_attempts;
  Mean angle, area, price, sun, cloud, priority;
  for (const auto& a : table.attempts) {
    with_attempts.insert(a.request_id);
    const Request& r = table.request(a.request_id);
    angle.add(a.off_nadir);
    area.add(r.area);
    price.add(r.price);
    sun.add(a.sun_elev);
    cloud.add(a.cloud_cover * 100.0);
    priority.add(r.priority);
  }
  sc.requests = static_cast<int>(with_attempts.size());
  sc.attempts = static_cast<int>(table.attempts.size());
  const std::size_t shared = instance.b_rows.size() + instance.a_rows.size() + instance.m_rows.size();
  sc.constraints_pairwise =
      static_cast<int>(shared + build_g_rows(table, instance.column_attempt, false).size());
  sc.constraints_simplified =
      static_cast<int>(shared + build_g_rows(table, instance.column_attempt, true).size());
  sc.avg_angle = angle.get();
  sc.avg_area = area.get();
  sc.avg_price = price.get();
  sc.avg_sun_elev = sun.get();
  sc.avg_cloud = cloud.get();
  sc.avg_priority = priority.get();

  auto& so = rep.solution;
  Mean s_angle, s_sun, s_cloud, s_priority;
  std::set<int> requests;
  std::set<std::pair<int, int>> strips;
  for (int c : schedule.selected) {
    const Attempt& a = table.attempts.at(static_cast<std::size_t>(instance.column_attempt.at(static_cast<std::size_t>(c))));
    const Request& r = table.request(a.request_id);
    ++so.acquisitions;
    s_angle.add(a.off_nadir);
    s_sun.add(a.sun_elev);
    s_cloud.add(a.cloud_cover * 100.0);
    s_priority.add(r.priority);
    if (a.cloud_cover * 100.0 < 10.0) ++so.cloud_below_10;
    if (a.cloud_cover * 100.0 > 30.0) ++so.cloud_above_30;
    if (a.off_nadir < 10.0) ++so.angle_below_10;
    if (a.off_nadir > 30.0) ++so.angle_above_30;
    if (requests.insert(r.request_id).second) {
      so.total_profit += r.price;
      if (r.priority >= 1 && r.priority <= 4) ++so.priority_counts[static_cast<std::size_t>(r.priority - 1)];
    }
    if (strips.insert({r.request_id, a.strip_index}).second) so.total_area += r.area / std::max(1, r.n_strips);
  }
  so.requests_acquired = static_cast<int>(requests.size());
  so.avg_angle = s_angle.get();
  so.avg_sun_elev = s_sun.get();
  so.avg_cloud = s_cloud.get();
  so.avg_priority = s_priority.get();
  return rep;
}

std::string report_to_json(const EvaluationReport& rep) {
  const auto& sc = rep.scenario;
  const auto& so = rep.solution;
  const Json j{{"scenario",
                {{"requests", sc.requests},
                 {"attempts", sc.attempts},
                 {"constraints_pairwise", sc.constraints_pairwise},
                 {"constraints_simplified", sc.constraints_simplified},
                 {"avg_angle", opt(sc.avg_angle)},
                 {"avg_area", opt(sc.avg_area)},
                 {"avg_price", opt(sc.avg_price)},
                 {"avg_sun_elev", opt(sc.avg_sun_elev)},
                 {"avg_cloud_pct", opt(sc.avg_cloud)},
                 {"avg_priority", opt(sc.avg_priority)}}},
               {"solution",
                {{"acquisitions", so.acquisitions},
                 {"requests_acquired", so.requests_acquired},
                 {"total_profit", so.total_profit},
                 {"avg_cloud_pct", opt(so.avg_cloud)},
                 {"cloud_below_10", so.cloud_below_10},
                 {"cloud_above_30", so.cloud_above_30},
                 {"avg_angle", opt(so.avg_angle)},
                 {"angle_below_10", so.angle_below_10},
                 {"angle_above_30", so.angle_above_30},
                 {"avg_priority", opt(so.avg_priority)},
                 {"priority_counts", so.priority_counts},
                 {"avg_sun_elev", opt(so.avg_sun_elev)},
                 {"total_area", so.total_area}}}};
  return dump_canonical(j);
}

EvaluationReport report_from_json(std::string_view text) {
  const Json j = parse_json(text, "report");
  return json_guard("report", [&] {
    EvaluationReport rep;
    const Json& s = j.at("scenario");
    auto& sc = rep.scenario;
    sc.requests = s.at("requests").get<int>();
    sc.attempts = s.at("attempts").get<int>();
    sc.constraints_pairwise = s.at("constraints_pairwise").get<int>();
    sc.constraints_simplified = s.at("constraints_simplified").get<int>();
    sc.avg_angle = opt_from(s, "avg_angle");
    sc.avg_area = opt_from(s, "avg_area");
    sc.avg_price = opt_from(s, "avg_price");
    sc.avg_sun_elev = opt_from(s, "avg_sun_elev");
    sc.avg_cloud = opt_from(s, "avg_cloud_pct");
    sc.avg_priority = opt_from(s, "avg_priority");
    const Json& o = j.at("solution");
    auto& so = rep.solution;
    so.acquisitions = o.at("acquisitions").get<int>();
    so.requests_acquired = o.at("requests_acquired").get<int>();
    so.total_profit = o.at("total_profit").get<double>();
    so.avg_cloud = opt_from(o, "avg_cloud_pct");
    so.cloud_below_10 = o.at("cloud_below_10").get<int>();
    so.cloud_above_30 = o.at("cloud_above_30").get<int>();
    so.avg_angle = opt_from(o, "avg_angle");
    so.angle_below_10 = o.at("angle_below_10").get<int>();
    so.angle_above_30 = o.at("angle_above_30").get<int>();
    so.avg_priority = opt_from(o, "avg_priority");
    so.priority_counts = o.at("priority_counts").get<std::array<int, 4>>();
    so.avg_sun_elev = opt_from(o, "avg_sun_elev");
    so.total_area = o.at("total_area").get<double>();
    return rep;
  });
}

std::string report_to_markdown(const EvaluationReport& rep) {
  const auto& sc = rep.scenario;
  const auto& so = rep.solution;
  std::ostringstream out;
  auto row = [&](const std::string& metric, const std::string& scen, const std::string& sol) {
    out << "| " << metric << " | " << scen << " | " << sol << " |\n";
  };
  out << "| Metric | Scenario | Solution |\n|---|---:|---:|\n";
  row("Requests (#)", std::to_string(sc.requests), std::to_string(so.requests_acquired));
  row("Attempts (#)", std::to_string(sc.attempts), kAbsent);
  row("Constraints (#)", std::to_string(sc.constraints_simplified) + " (" + std::to_string(sc.constraints_pairwise) + ")",
      kAbsent);
  row("Avg. angle (deg)", fmt(sc.avg_angle), fmt(so.avg_angle));
  row("Avg. area (km2)", fmt(sc.avg_area), kAbsent);
  row("Avg. price (euro)", fmt(sc.avg_price), kAbsent);
  row("Avg. sun elevation (deg)", fmt(sc.avg_sun_elev), fmt(so.avg_sun_elev));
  row("Avg. cloud (%)", fmt(sc.avg_cloud), fmt(so.avg_cloud));
  row("Avg. priority", fmt(sc.avg_priority), fmt(so.avg_priority));
  row("Acquisitions (#)", kAbsent, std::to_string(so.acquisitions));
  row("Total profit (euro)", kAbsent, fmt(so.total_profit));
  row("Cloud < 10% (#)", kAbsent, std::to_string(so.cloud_below_10));
  row("Cloud > 30% (#)", kAbsent, std::to_string(so.cloud_above_30));
  row("Angle < 10 deg (#)", kAbsent, std::to_string(so.angle_below_10));
  row("Angle > 30 deg (#)", kAbsent, std::to_string(so.angle_above_30));
  for (std::size_t p = 0; p < so.priority_counts.size(); ++p) {
    row("Priority " + std::to_string(p + 1) + " (#)", kAbsent, std::to_string(so.priority_counts[p]));
  }
  row("Total area (km2)", kAbsent, fmt(so.total_area));
  return out.str();
}

void export_report(const EvaluationReport& report, const std::filesystem::path& path, ReportFormat format) {
  detail::write_file_atomic(path, format == ReportFormat::kJson ? report_to_json(report) : report_to_markdown(report));
}

}  // namespace eos
