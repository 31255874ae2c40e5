// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include "eos/tle.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "eos/errors.hpp"

namespace eos {
namespace {

std::string_view chomp(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// 1-based inclusive column range, as TLE documentation states them.
std::string_view cols(std::string_view line, int first, int last) {
  return line.substr(static_cast<std::size_t>(first - 1), static_cast<std::size_t>(last - first + 1));
}

double parse_double(std::string_view field, const char* what) {
  std::string s(trim(field));
  if (s.empty()) throw ParseError(std::string("empty TLE field: ") + what);
  if (s.front() == '+') s.erase(0, 1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError(std::string("invalid TLE field ") + what + ": '" + s + "'");
  }
  return v;
}

// Implied-decimal exponent notation, e.g. " 51862-4" -> 0.51862e-4.
double parse_exponential(std::string_view field, const char* what) {
  std::string_view s = trim(field);
  if (s.empty()) return 0.0;
  double sign = 1.0;
  if (s.front() == '-' || s.front() == '+') {
    if (s.front() == '-') sign = -1.0;
    s.remove_prefix(1);
  }
  const auto exp_pos = s.find_last_of("+-");
  if (exp_pos == std::string_view::npos || exp_pos == 0) {
    throw ParseError(std::string("invalid TLE exponent field ") + what);
  }
  const std::string mantissa = "0." + std::string(trim(s.substr(0, exp_pos)));
  const double m = parse_double(mantissa, what);
  const double e = parse_double(s.substr(exp_pos), what);
  return sign * m * std::pow(10.0, e);
}

int parse_catalog(std::string_view field) {
  std::string_view s = trim(field);
  if (s.empty()) throw ParseError("empty catalog number");
  int head = 0;
  const char c = s.front();
  if (std::isdigit(static_cast<unsigned char>(c))) {
    head = c - '0';
  } else if (c >= 'A' && c <= 'H') {
    head = c - 'A' + 10;
  } else if (c >= 'J' && c <= 'N') {
    head = c - 'J' + 18;
  } else if (c >= 'P' && c <= 'Z') {
    head = c - 'P' + 23;
  } else {
    throw ParseError("invalid catalog number '" + std::string(s) + "'");
  }
  int tail = 0;
  const auto rest = s.substr(1);
  if (!rest.empty()) {
    auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), tail);
    if (ec != std::errc() || p != rest.data() + rest.size()) {
      throw ParseError("invalid catalog number '" + std::string(s) + "'");
    }
  }
  int scale = 1;
  for (std::size_t i = 0; i < rest.size(); ++i) scale *= 10;
  return head * scale + tail;
}

void check_line(std::string_view line, char number) {
  if (line.size() != 69) {
    throw TleLengthError("TLE line " + std::string(1, number) + " has " +
                         std::to_string(line.size()) + " characters, expected 69");
  }
  if (line[0] != number || line[1] != ' ') {
    throw ParseError("TLE line " + std::string(1, number) + " does not start with '" +
                     std::string(1, number) + " '");
  }
  const char c = line[68];
  if (!std::isdigit(static_cast<unsigned char>(c)) || tle_checksum(line) != c - '0') {
    throw TleChecksumError("TLE line " + std::string(1, number) + " checksum mismatch: expected " +
                           std::to_string(tle_checksum(line)) + ", found '" + std::string(1, c) + "'");
  }
}

}  // namespace

int tle_checksum(std::string_view line) {
  int sum = 0;
  for (std::size_t i = 0; i < line.size() && i < 68; ++i) {
    const char c = line[i];
    if (c >= '0' && c <= '9') {
      sum += c - '0';
    } else if (c == '-') {
      sum += 1;
    }
  }
  return sum % 10;
}

TwoLineElement parse_tle_lines(std::string_view line1, std::string_view line2, std::string_view name) {
  line1 = chomp(line1);
  line2 = chomp(line2);
  check_line(line1, '1');
  check_line(line2, '2');
  const int id1 = parse_catalog(cols(line1, 3, 7));
  const int id2 = parse_catalog(cols(line2, 3, 7));
  if (id1 != id2) {
    throw TleCatalogMismatchError("TLE catalog numbers differ: " + std::to_string(id1) + " vs " +
                                  std::to_string(id2));
  }

  TwoLineElement tle;
  tle.norad_id = id1;
  tle.name = std::string(trim(name));
  if (tle.name.rfind("0 ", 0) == 0) tle.name = std::string(trim(std::string_view(tle.name).substr(2)));
  tle.line1 = std::string(line1);
  tle.line2 = std::string(line2);

  const int yy = static_cast<int>(parse_double(cols(line1, 19, 20), "epoch year"));
  const double day = parse_double(cols(line1, 21, 32), "epoch day");
  if (day < 1.0 || day >= 367.0) throw ParseError("TLE epoch day out of range");
  const int year = yy < 57 ? 2000 + yy : 1900 + yy;
  tle.epoch = make_instant(year, 1, 1) +
              std::chrono::microseconds{std::llround((day - 1.0) * 86400e6)};

  MeanElements& el = tle.elements;
  el.epoch = tle.epoch;
  el.bstar = parse_exponential(cols(line1, 54, 61), "bstar");
  el.inclination = parse_double(cols(line2, 9, 16), "inclination");
  el.right_ascension = parse_double(cols(line2, 18, 25), "right ascension");
  el.eccentricity = parse_double("0." + std::string(trim(cols(line2, 27, 33))), "eccentricity");
  el.argument_of_perigee = parse_double(cols(line2, 35, 42), "argument of perigee");
  el.mean_anomaly = parse_double(cols(line2, 44, 51), "mean anomaly");
  el.mean_motion = parse_double(cols(line2, 53, 63), "mean motion");
  return tle;
}

TwoLineElement parse_tle(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = chomp(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    if (!trim(line).empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.size() == 2) return parse_tle_lines(lines[0], lines[1]);
  if (lines.size() == 3) return parse_tle_lines(lines[1], lines[2], lines[0]);
  throw ParseError("expected 2 or 3 non-empty TLE lines, got " + std::to_string(lines.size()));
}

std::vector<TwoLineElement> parse_tle_file(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    const auto l = chomp(line);
    if (!trim(l).empty() && trim(l).front() != '#') lines.emplace_back(l);
  }
  std::vector<TwoLineElement> out;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (lines[i].rfind("1 ", 0) == 0) {
      if (i + 1 >= lines.size()) throw ParseError("dangling TLE line 1");
      out.push_back(parse_tle_lines(lines[i], lines[i + 1]));
      i += 2;
    } else {
      if (i + 2 >= lines.size()) throw ParseError("dangling TLE name line");
      out.push_back(parse_tle_lines(lines[i + 1], lines[i + 2], lines[i]));
      i += 3;
    }
  }
  return out;
}

std::vector<TwoLineElement> read_tle_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open TLE file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tle_file(ss.str());
}

std::string to_text(const TwoLineElement& tle) {
  std::string out;
  if (!tle.name.empty()) out += tle.name + "\n";
  out += tle.line1 + "\n" + tle.line2 + "\n";
  return out;
}

}  // namespace eos
