// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <chrono>
#include <cmath>
#include <set>

#include "embedded.hpp"
#include "eos/errors.hpp"
#include "eos/report.hpp"
#include "file_util.hpp"
#include "json_util.hpp"

namespace eos {
namespace {

Json point(const GeodeticPoint& p) { return Json{{"type", "Point"}, {"coordinates", {p.longitude, p.latitude}}}; }

Json feature(Json geometry, Json properties) {
  return Json{{"type", "Feature"}, {"geometry", std::move(geometry)}, {"properties", std::move(properties)}};
}

// Splits at antimeridian crossings so lines do not wrap across the map.
Json track_geometry(const std::vector<GeodeticPoint>& pts) {
  Json lines = Json::array();
  Json current = Json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && std::abs(pts[i].longitude - pts[i - 1].longitude) > 180.0) {
      if (current.size() >= 2) lines.push_back(current);
      current = Json::array();
    }
    current.push_back({pts[i].longitude, pts[i].latitude});
  }
  if (current.size() >= 2) lines.push_back(current);
  return Json{{"type", "MultiLineString"}, {"coordinates", lines}};
}

Json request_props(const Request& r) {
  return Json{{"kind", "request"},   {"request_id", r.request_id}, {"attempt_id", nullptr},
              {"selected", false},   {"priority", r.priority},     {"price", r.price},
              {"area", r.area},      {"stereo", r.stereo}};
}

// Keeps embedded text from closing its <script> element early.
std::string escape_script(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '<' && i + 1 < s.size() && s[i + 1] == '/' && i + 8 <= s.size()) {
      std::string tag(s.substr(i + 2, 6));
      for (auto& ch : tag) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      if (tag == "script") {
        out += "<\\/";
        ++i;
        continue;
      }
    }
    out.push_back(s[i]);
  }
  return out;
}

std::string escape_html(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

constexpr std::string_view kMapScript = R"JS(
(function () {
  var data = JSON.parse(document.getElementById('eos-data').textContent);
  var map = L.map('map', {worldCopyJump: true}).setView([20, 0], 2);
  L.tileLayer('https://{s}.tile.openstreetmap.org/{z}/{x}/{y}.png', {
    maxZoom: 18,
    attribution: '&copy; OpenStreetMap contributors'
  }).addTo(map);
  var colors = {track: '#3366cc', request: '#777777', attempt: '#ff9900', acquisition: '#cc0033'};
  var groups = {track: [], request: [], attempt: [], acquisition: []};
  data.features.forEach(function (f) { groups[f.properties.kind].push(f); });
  function popup(f, layer) {
    var p = f.properties, rows = [];
    Object.keys(p).forEach(function (k) { if (p[k] !== null) rows.push(k + ': ' + p[k]); });
    layer.bindPopup(rows.join('<br>'));
  }
  function layer(kind, radius) {
    return L.geoJSON({type: 'FeatureCollection', features: groups[kind]}, {
      style: function () { return {color: colors[kind], weight: 2}; },
      pointToLayer: function (f, ll) {
        return L.circleMarker(ll, {radius: radius, color: colors[kind], fillOpacity: 0.7});
      },
      onEachFeature: popup
    });
  }
  var overlays = {
    'Ground tracks': layer('track', 0),
    'Requests': layer('request', 3),
    'Attempts': layer('attempt', 4),
    'Acquisitions': layer('acquisition', 6)
  };
  Object.keys(overlays).forEach(function (k) { overlays[k].addTo(map); });
  L.control.layers(null, overlays, {collapsed: false}).addTo(map);
  var all = L.geoJSON(data);
  if (all.getBounds().isValid()) map.fitBounds(all.getBounds(), {maxZoom: 6});
})();
)JS";

}  // namespace

std::string map_geojson(const PerformanceTable& table, std::span<const int> selected_attempts,
                        const MapOptions& options) {
  const std::set<int> selected(selected_attempts.begin(), selected_attempts.end());
  for (int id : selected) {
    if (id < 0 || static_cast<std::size_t>(id) >= table.attempts.size()) {
      throw ValidationError("selected attempt " + std::to_string(id) + " is not in the table");
    }
  }
  Json features = Json::array();
  const Instant end = horizon_end(table.horizon);
  for (const auto& s : table.satellites) {
    const Propagator prop(s.tle);
    const auto pts = ground_track(prop, table.horizon.start, end, options.track_step_s);
    features.push_back(feature(track_geometry(pts), Json{{"kind", "track"},
                                                         {"satellite", s.spec.norad_id},
                                                         {"name", s.tle.name},
                                                         {"request_id", nullptr},
                                                         {"attempt_id", nullptr},
                                                         {"selected", false}}));
  }
  for (const auto& r : table.requests) features.push_back(feature(point(r.location), request_props(r)));
  for (const auto& a : table.attempts) {
    const bool sel = selected.count(a.attempt_id) > 0;
    features.push_back(feature(point(a.target), Json{{"kind", "attempt"},
                                                     {"request_id", a.request_id},
                                                     {"attempt_id", a.attempt_id},
                                                     {"selected", sel},
                                                     {"satellite", a.satellite},
                                                     {"t_clock", format_iso8601(a.t_clock)},
                                                     {"role", to_string(a.stereo_role)},
                                                     {"strip", a.strip_index},
                                                     {"off_nadir", a.off_nadir},
                                                     {"cloud_cover", a.cloud_cover}}));
  }
  for (int id : selected) {
    const Attempt& a = table.attempts[static_cast<std::size_t>(id)];
    features.push_back(feature(point(a.target), Json{{"kind", "acquisition"},
                                                     {"request_id", a.request_id},
                                                     {"attempt_id", a.attempt_id},
                                                     {"selected", true},
                                                     {"satellite", a.satellite},
                                                     {"t_clock", format_iso8601(a.t_clock)}}));
  }
  return dump_canonical(Json{{"type", "FeatureCollection"}, {"features", features}});
}

std::string request_geojson(std::span<const Request> requests) {
  Json features = Json::array();
  for (const auto& r : requests) features.push_back(feature(point(r.location), request_props(r)));
  return dump_canonical(Json{{"type", "FeatureCollection"}, {"features", features}});
}

std::string map_html(std::string_view geojson, const MapOptions& options) {
  std::string html;
  html += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n";
  if (!options.reproducible) {
    const auto now = std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
    html += "<!-- generated " + format_iso8601(Instant(now)) + " -->\n";
  }
  html += "<title>" + escape_html(options.title) + "</title>\n";
  html += "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\">\n<style>\n";
  html += embedded::kLeafletCss;
  html += "\nhtml, body, #map { height: 100%; margin: 0; }\n</style>\n<script>\n";
  html += escape_script(embedded::kLeafletJs);
  html += "\n</script>\n</head>\n<body>\n<div id=\"map\"></div>\n";
  html += "<script type=\"application/json\" id=\"eos-data\">\n" + escape_script(geojson) + "</script>\n";
  html += "<script>";
  html += kMapScript;
  html += "</script>\n</body>\n</html>\n";
  return html;
}

void export_map(const PerformanceTable& table, const ProblemInstance& instance, const Schedule& schedule,
                const std::filesystem::path& html_path, const MapOptions& options) {
  std::vector<int> attempts;
  for (int c : schedule.selected) attempts.push_back(instance.column_attempt.at(static_cast<std::size_t>(c)));
  const std::string geojson = map_geojson(table, attempts, options);
  auto sidecar = html_path;
  sidecar.replace_extension(".geojson");
  detail::write_file_atomic(sidecar, geojson);
  detail::write_file_atomic(html_path, map_html(geojson, options));
}

void export_request_map(std::span<const Request> requests, const std::filesystem::path& html_path,
                        const MapOptions& options) {
  const std::string geojson = request_geojson(requests);
  auto sidecar = html_path;
  sidecar.replace_extension(".geojson");
  detail::write_file_atomic(sidecar, geojson);
  detail::write_file_atomic(html_path, map_html(geojson, options));
}

}  // namespace eos
