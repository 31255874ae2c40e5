// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <string>

#include "eos/errors.hpp"
#include "eos/tle.hpp"
#include "support/fixtures.hpp"

namespace eos {
namespace {

const std::string kL1 = "1 00005U 58002B   00179.78495062  .00000023  00000-0  28098-4 0  4753";
const std::string kL2 = "2 00005  34.2682 348.7242 1859667 331.7664  19.3264 10.82419157413667";

TEST(Tle, ParsesReferenceSatellite) {
  const TwoLineElement t = parse_tle(kL1 + "\n" + kL2 + "\n");
  EXPECT_EQ(t.norad_id, 5);
  EXPECT_TRUE(t.name.empty());
  EXPECT_DOUBLE_EQ(t.elements.inclination, 34.2682);
  EXPECT_DOUBLE_EQ(t.elements.right_ascension, 348.7242);
  EXPECT_DOUBLE_EQ(t.elements.eccentricity, 0.1859667);
  EXPECT_DOUBLE_EQ(t.elements.mean_motion, 10.82419157);
  EXPECT_DOUBLE_EQ(t.elements.bstar, 0.28098e-4);
  // Day 179.78495062 of 2000.
  EXPECT_EQ(format_iso8601(t.epoch).substr(0, 16), "2000-06-27T18:50");
}

TEST(Tle, ChecksumOfReferenceLines) {
  EXPECT_EQ(tle_checksum(kL1), 3);
  EXPECT_EQ(tle_checksum(kL2), 7);
}

TEST(Tle, NameLineIsKept) {
  const TwoLineElement t = parse_tle("VANGUARD 1  \n" + kL1 + "\n" + kL2);
  EXPECT_EQ(t.name, "VANGUARD 1");
  EXPECT_EQ(to_text(t), "VANGUARD 1\n" + kL1 + "\n" + kL2 + "\n");
}

TEST(Tle, CorruptedChecksum) {
  std::string bad = kL1;
  bad[68] = '4';
  EXPECT_THROW(parse_tle_lines(bad, kL2), TleChecksumError);
}

TEST(Tle, CatalogMismatch) {
  std::string l2 = kL2;
  l2.replace(2, 5, "00006");
  l2[68] = static_cast<char>('0' + tle_checksum(l2));
  EXPECT_THROW(parse_tle_lines(kL1, l2), TleCatalogMismatchError);
}

TEST(Tle, LineLength) {
  EXPECT_THROW(parse_tle_lines(kL1.substr(0, 68), kL2), TleLengthError);
  EXPECT_THROW(parse_tle_lines(kL1, kL2 + " "), TleLengthError);
}

TEST(Tle, ErrorsAreDistinct) {
  std::string bad = kL1;
  bad[68] = '4';
  try {
    parse_tle_lines(bad, kL2);
    FAIL();
  } catch (const TleLengthError&) {
    FAIL() << "wrong error kind";
  } catch (const TleChecksumError&) {
  }
}

TEST(Tle, SwappedLinesRejected) { EXPECT_THROW(parse_tle_lines(kL2, kL1), ParseError); }

TEST(Tle, BundledFile) {
  const auto tles = eos::testing::spot_tles();
  ASSERT_EQ(tles.size(), 2u);
  EXPECT_EQ(tles[0].norad_id, 38755);
  EXPECT_EQ(tles[1].norad_id, 40053);
  for (const auto& t : tles) {
    EXPECT_EQ(parse_tle(to_text(t)).line1, t.line1);
    EXPECT_NEAR(t.elements.inclination, 98.2, 0.1);
  }
}

TEST(Tle, FileWithTwoAndThreeLineSets) {
  const std::string text = kL1 + "\n" + kL2 + "\nSECOND\n" + kL1 + "\r\n" + kL2 + "\r\n\n";
  const auto tles = parse_tle_file(text);
  ASSERT_EQ(tles.size(), 2u);
  EXPECT_EQ(tles[1].name, "SECOND");
}

TEST(Tle, VerificationSetParses) {
  int n = 0;
  for (const auto& c : eos::testing::sgp4_cases()) {
    EXPECT_NO_THROW(parse_tle_lines(c.line1, c.line2)) << c.line1;
    ++n;
  }
  EXPECT_GT(n, 30);
}

}  // namespace
}  // namespace eos
