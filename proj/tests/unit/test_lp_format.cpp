// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <regex>

#include "eos/errors.hpp"
#include "eos/problem.hpp"
#include "support/fixtures.hpp"
#include "support/hand_table.hpp"

namespace eos {
namespace {

int count_matches(const std::string& text, const std::regex& re) {
  return static_cast<int>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

TEST(LpFormat, TwoColumnRoundTrip) {
  eos::testing::HandTable h;
  h.attempt(h.request(), 0, 0.0);
  h.attempt(h.request(), 1, 30.0);
  ProblemInstance inst = assemble(h.shared(), false);
  inst.scores = {1.25, 0.5};
  const LpModel model = to_lp_model(inst);
  ASSERT_EQ(model.n, 2);
  // g0, b0, b1, m0
  ASSERT_EQ(model.rows.size(), 4u);
  EXPECT_EQ(model.rows[0], (LpRow{"g0", {{1.0, 0}, {1.0, 1}}, "<=", 1.0}));
  EXPECT_EQ(model.rows[1].name, "b0");
  EXPECT_EQ(model.rows[3].name, "m0");
  EXPECT_DOUBLE_EQ(model.rows[3].rhs, h.spec().memory_capacity);

  const std::string text = write_lp(model);
  EXPECT_NE(text.find("Maximize"), std::string::npos);
  EXPECT_NE(text.find("Subject To"), std::string::npos);
  EXPECT_NE(text.find("Binaries\n x0 x1\n"), std::string::npos);
  EXPECT_EQ(read_lp(text), model);
}

TEST(LpFormat, EmptyInstance) {
  eos::testing::HandTable h;
  const ProblemInstance inst = assemble(h.shared(), false);
  const std::string text = write_lp(to_lp_model(inst));
  EXPECT_NE(text.find("Subject To\nBinaries\nEnd\n"), std::string::npos);
  const LpModel back = read_lp(text);
  EXPECT_EQ(back.n, 0);
  EXPECT_TRUE(back.rows.empty());
}

TEST(LpFormat, StereoRowsAreEqualities) {
  eos::testing::HandTable h;
  const int r = h.request(true);
  const int f = h.attempt(r, 0, 0.0, 1.0, 0, StereoRole::kStereoFirst);
  const int s = h.attempt(r, 90, 0.0, 1.0, 0, StereoRole::kStereoSecond);
  h.pair(f, s);
  const LpModel model = to_lp_model(assemble(h.shared(), false));
  const auto it = std::find_if(model.rows.begin(), model.rows.end(), [](const LpRow& row) { return row.name == "a0"; });
  ASSERT_NE(it, model.rows.end());
  EXPECT_EQ(*it, (LpRow{"a0", {{1.0, f}, {-1.0, s}}, "=", 0.0}));
  EXPECT_NE(write_lp(model).find(" a0: 1 x0 - 1 x1 = 0\n"), std::string::npos);
}

TEST(LpFormat, RandomRoundTrip) {
  for (int seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed);
    ProblemInstance inst = assemble(std::make_shared<PerformanceTable>(eos::testing::random_table(rng, {})), seed % 2);
    eos::testing::random_scores(inst, rng);
    const LpModel model = to_lp_model(inst);
    const std::string text = write_lp(model);
    EXPECT_EQ(read_lp(text), model) << "seed " << seed;
    EXPECT_EQ(count_matches(text, std::regex(R"(\bx\d+\b)")) > 0, inst.n > 0);
  }
}

TEST(LpFormat, HandWrittenInput) {
  const LpModel m = read_lp(
      "\\ a comment\n"
      "Maximize\n obj: 2 x0 + 3.5 x1\n"
      "Subject To\n c1: x0 + x1 <= 1\n c2: - x0 + 2 x1 >= 0\n"
      "Binaries\n x0 x1\nEnd\n");
  EXPECT_EQ(m.n, 2);
  EXPECT_EQ(m.objective, (std::vector<double>{2.0, 3.5}));
  ASSERT_EQ(m.rows.size(), 2u);
  EXPECT_EQ(m.rows[0], (LpRow{"c1", {{1.0, 0}, {1.0, 1}}, "<=", 1.0}));
  EXPECT_EQ(m.rows[1], (LpRow{"c2", {{-1.0, 0}, {2.0, 1}}, ">=", 0.0}));
}

TEST(LpFormat, Malformed) {
  EXPECT_THROW(read_lp("Maximize\n obj: 2 y0\nEnd\n"), ParseError);
  EXPECT_THROW(read_lp("Maximize\n obj: x0\nSubject To\n c: x0 + 3 <= 1\nBinaries\n x0\nEnd\n"), ParseError);
  EXPECT_THROW(read_lp("garbage"), ParseError);
}

TEST(LpFormat, ExportWritesFile) {
  eos::testing::HandTable h;
  h.attempt(h.request(), 0, 0.0);
  const ProblemInstance inst = assemble(h.shared(), false);
  const auto path = std::filesystem::temp_directory_path() / ("eos_lp_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + ".lp");
  export_lp(inst, path);
  EXPECT_EQ(read_lp(eos::testing::read_text(path)), to_lp_model(inst));
  // A regular file where the parent directory should be.
  EXPECT_THROW(export_lp(inst, path / "x.lp"), IoError);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace eos
