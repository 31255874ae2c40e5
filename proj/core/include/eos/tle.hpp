// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_TLE_HPP_
#define EOS_TLE_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "eos/sgp4.hpp"
#include "eos/time.hpp"

namespace eos {

struct TwoLineElement {
  int norad_id = 0;
  std::string name;  // optional title line, trimmed
  std::string line1;
  std::string line2;
  Instant epoch;
  MeanElements elements;
};

// Modulo-10 checksum over the first 68 characters: digits count their value,
// '-' counts 1, everything else 0.
int tle_checksum(std::string_view line);

// Parses two lines, optionally preceded by a name line. Throws
// TleLengthError, TleChecksumError or TleCatalogMismatchError; other field
// problems raise ParseError.
TwoLineElement parse_tle(std::string_view text);
TwoLineElement parse_tle_lines(std::string_view line1, std::string_view line2,
                               std::string_view name = {});

// Parses a file of concatenated 2- or 3-line sets.
std::vector<TwoLineElement> parse_tle_file(std::string_view text);
std::vector<TwoLineElement> read_tle_file(const std::filesystem::path& path);

// Text form as written back to disk (name line only when present).
std::string to_text(const TwoLineElement& tle);

}  // namespace eos

#endif  // EOS_TLE_HPP_
