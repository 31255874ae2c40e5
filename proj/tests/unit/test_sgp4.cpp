// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "eos/errors.hpp"
#include "eos/sgp4.hpp"
#include "eos/tle.hpp"
#include "support/fixtures.hpp"

namespace eos {
namespace {

PropagationError::Kind kind_of(const std::string& name) {
  if (name == "negative_semi-latus_rectum") return PropagationError::Kind::kNegativeSemiLatusRectum;
  if (name == "diverging_perturbed_eccentricity") return PropagationError::Kind::kPerturbedEccentricity;
  if (name == "diverging_mean_eccentricity") return PropagationError::Kind::kMeanEccentricity;
  ADD_FAILURE() << "unknown error kind " << name;
  return PropagationError::Kind::kDiverged;
}

TEST(Sgp4, VerificationVectors) {
  int states = 0;
  for (const auto& c : eos::testing::sgp4_cases()) {
    const TwoLineElement tle = parse_tle_lines(c.line1, c.line2);
    const Sgp4 model(tle.elements, Sgp4Mode::kAfspc);
    for (const auto& st : c.states) {
      SCOPED_TRACE(c.line1.substr(2, 5) + " t=" + std::to_string(st.tsince_min));
      if (st.error) {
        try {
          model.propagate(st.tsince_min);
          ADD_FAILURE() << "expected " << st.error_kind;
        } catch (const PropagationError& e) {
          EXPECT_EQ(e.kind(), kind_of(st.error_kind));
        }
        continue;
      }
      const TemeState r = model.propagate(st.tsince_min);
      EXPECT_LT(norm(r.position - st.position), 1e-3);
      EXPECT_LT(norm(r.velocity - st.velocity), 1e-6);
      ++states;
    }
  }
  EXPECT_GT(states, 600);
}

TEST(Sgp4, DeepSpaceFlag) {
  const auto cases = eos::testing::sgp4_cases();
  // 00005 has a 133 min period; 04632 is near-geosynchronous.
  EXPECT_FALSE(Sgp4(parse_tle_lines(cases[0].line1, cases[0].line2).elements).deep_space());
  EXPECT_TRUE(Sgp4(parse_tle_lines(cases[1].line1, cases[1].line2).elements).deep_space());
}

TEST(Sgp4, BitIdenticalRepeats) {
  const auto tle = eos::testing::spot_tles()[0];
  const Sgp4 a(tle.elements);
  const Sgp4 b(tle.elements);
  for (double t : {0.0, 13.7, -250.0, 1440.0}) {
    const TemeState x = a.propagate(t);
    const TemeState y = b.propagate(t);
    EXPECT_EQ(x.position, y.position);
    EXPECT_EQ(x.velocity, y.velocity);
  }
}

TEST(Sgp4, ModesAgreeClosely) {
  // WGS-72 vs WGS-84 constants move a LEO state by well under a kilometre
  // within a day of epoch.
  const auto tle = eos::testing::spot_tles()[0];
  const Sgp4 improved(tle.elements, Sgp4Mode::kImproved);
  const Sgp4 afspc(tle.elements, Sgp4Mode::kAfspc);
  for (double t : {0.0, 60.0, 720.0}) {
    EXPECT_LT(norm(improved.propagate(t).position - afspc.propagate(t).position), 5.0);
  }
}

}  // namespace
}  // namespace eos
