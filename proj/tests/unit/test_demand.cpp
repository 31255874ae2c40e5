// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <set>

#include "eos/demand.hpp"
#include "eos/errors.hpp"
#include "support/fixtures.hpp"

namespace eos {
namespace {

// Pearson statistic with bins of expected count < 5 pooled; returns the
// upper tail probability.
double chi_square_p(const std::vector<double>& observed, const std::vector<double>& expected) {
  double stat = 0.0, pool_o = 0.0, pool_e = 0.0;
  int bins = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] < 5.0) {
      pool_o += observed[i];
      pool_e += expected[i];
      continue;
    }
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    ++bins;
  }
  if (pool_e > 0.0) {
    stat += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
    ++bins;
  }
  const boost::math::chi_squared dist(bins - 1);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

TEST(Demand, DefaultSizeAndIds) {
  const auto db = generate_customer_db(300, 42, builtin_population_grid());
  ASSERT_EQ(db.size(), 300u);
  for (int i = 0; i < 300; ++i) EXPECT_EQ(db[static_cast<std::size_t>(i)].request_id, i);
  EXPECT_EQ(db, generate_customer_db(300, 42, builtin_population_grid()));
}

TEST(Demand, SingleCellGrid) {
  const PopulationGrid grid = make_population_grid({{{0.0, 0.0, 0.0}, 1.0}}, 5.0);
  const auto db = generate_customer_db(1, 9, grid);
  ASSERT_EQ(db.size(), 1u);
  EXPECT_LE(std::abs(db[0].location.latitude), 2.5);
  EXPECT_LE(std::abs(db[0].location.longitude), 2.5);
}

TEST(Demand, SeedSensitivity) {
  const auto a = generate_customer_db(50, 1, builtin_population_grid());
  const auto b = generate_customer_db(50, 2, builtin_population_grid());
  std::vector<std::pair<double, double>> la, lb;
  for (const auto& r : a) la.emplace_back(r.location.latitude, r.location.longitude);
  for (const auto& r : b) lb.emplace_back(r.location.latitude, r.location.longitude);
  EXPECT_NE(la, lb);
}

TEST(Demand, RejectsBadArguments) {
  EXPECT_THROW(generate_customer_db(0, 1, builtin_population_grid()), ValidationError);
  EXPECT_THROW(generate_customer_db(-3, 1, builtin_population_grid()), ValidationError);
  EXPECT_THROW(generate_customer_db(5, 1, PopulationGrid{}), ValidationError);
  EXPECT_THROW(make_population_grid({}, 5.0), ValidationError);
  EXPECT_THROW(make_population_grid({{{0, 0, 0}, -1.0}}, 5.0), ValidationError);
  EXPECT_THROW(make_population_grid({{{0, 0, 0}, 0.0}}, 5.0), ValidationError);
}

TEST(Demand, RowInvariants) {
  const auto db = generate_customer_db(5000, 17, builtin_population_grid());
  EXPECT_NO_THROW(validate(std::span<const Request>(db)));
  for (const auto& r : db) {
    EXPECT_NO_THROW(validate(r.location));
    EXPECT_EQ(r.location.altitude, 0.0);
    EXPECT_GE(r.area, 25.0);
    EXPECT_LE(r.area, 2500.0);
    EXPECT_GE(r.priority, 1);
    EXPECT_LE(r.priority, 4);
    const double bonus = r.priority == 1 ? 600.0 : (r.priority == 2 ? 300.0 : 0.0);
    EXPECT_DOUBLE_EQ(r.price, 400.0 + 1.2 * r.area + bonus);
    EXPECT_GE(r.age, 0);
    EXPECT_LE(r.age, 10);
    EXPECT_GE(r.uncertainty, 0.0);
    EXPECT_LE(r.uncertainty, 1.0);
    EXPECT_EQ(r.n_strips, 1);  // sqrt(2500) = 50 km < 60 km swath
  }
}

TEST(Demand, PriorityHistogramExamples) {
  std::vector<Request> db(4);
  for (int i = 0; i < 4; ++i) {
    db[static_cast<std::size_t>(i)].request_id = i;
    db[static_cast<std::size_t>(i)].priority = i + 1;
  }
  PriorityHistogram h = priority_histogram(db);
  EXPECT_EQ(h.counts, (std::array<int, 4>{1, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(h.mean(), 2.5);
  for (auto& r : db) r.priority = 1;
  h = priority_histogram(db);
  EXPECT_EQ(h.counts, (std::array<int, 4>{4, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(h.mean(), 1.0);
  EXPECT_THROW(priority_histogram(std::vector<Request>{}), ValidationError);
}

TEST(Demand, SeededPriorityMeanBand) {
  const auto db = generate_customer_db(300, 42, builtin_population_grid());
  const PriorityHistogram h = priority_histogram(db);
  EXPECT_EQ(h.total(), 300);
  EXPECT_GE(h.mean(), 2.2);
  EXPECT_LE(h.mean(), 2.7);
}

TEST(Demand, LocationMarginalChiSquare) {
  const PopulationGrid& grid = builtin_population_grid();
  EXPECT_EQ(grid.cells.size(), 2592u);
  const int n = 50000;
  const auto db = generate_customer_db(n, 2024, grid);
  std::vector<double> observed(grid.cells.size(), 0.0), expected(grid.cells.size(), 0.0);
  for (const auto& r : db) observed[cell_index(grid, r.location)] += 1.0;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    expected[i] = n * grid.cells[i].weight;
    if (grid.cells[i].weight == 0.0) EXPECT_EQ(observed[i], 0.0);
  }
  EXPECT_GT(chi_square_p(observed, expected), 0.01);
}

TEST(Demand, AttributeDistributions) {
  const int n = 20000;
  const auto db = generate_customer_db(n, 5, builtin_population_grid());
  std::vector<double> pri(4, 0.0), age(11, 0.0);
  int stereo = 0;
  double log_area = 0.0;
  for (const auto& r : db) {
    pri[static_cast<std::size_t>(r.priority - 1)] += 1.0;
    age[static_cast<std::size_t>(r.age)] += 1.0;
    stereo += r.stereo;
    log_area += std::log(r.area);
  }
  EXPECT_GT(chi_square_p(pri, {0.2 * n, 0.3 * n, 0.3 * n, 0.2 * n}), 0.01);
  EXPECT_GT(chi_square_p(age, std::vector<double>(11, n / 11.0)), 0.01);
  // Binomial(n, 0.1): sd = 42.4.
  EXPECT_NEAR(stereo, 0.1 * n, 4.0 * 42.4);
  // Log-uniform area: mean of log is the midpoint of the log range.
  EXPECT_NEAR(log_area / n, 0.5 * (std::log(25.0) + std::log(2500.0)), 0.03);
}

TEST(Demand, JsonLinesRoundTrip) {
  const auto db = generate_customer_db(25, 3, builtin_population_grid());
  const std::string text = to_jsonl(db);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 25);
  const auto first = text.substr(0, text.find('\n'));
  for (const char* key : {"\"request_id\"", "\"location\"", "\"area\"", "\"priority\"", "\"price\"", "\"age\"",
                          "\"stereo\"", "\"uncertainty\"", "\"n_strips\""}) {
    EXPECT_NE(first.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(from_jsonl(text), db);
  EXPECT_THROW(from_jsonl("{not json}\n"), ParseError);
}

TEST(Demand, DuplicateIdsRejected) {
  auto db = generate_customer_db(3, 3, builtin_population_grid());
  db[2].request_id = 0;
  EXPECT_THROW(validate(std::span<const Request>(db)), ValidationError);
}

TEST(Demand, GridCsv) {
  const PopulationGrid g = parse_population_grid_csv("# comment\ncenter_lat,center_lon,weight\n2.5,2.5,3\n-2.5,2.5,1\n", 5.0);
  ASSERT_EQ(g.cells.size(), 2u);
  EXPECT_DOUBLE_EQ(g.cells[0].weight, 0.75);
  EXPECT_THROW(parse_population_grid_csv("center_lat,center_lon,weight\n1,2\n", 5.0), ParseError);
}

}  // namespace
}  // namespace eos
