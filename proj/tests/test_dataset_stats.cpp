// Copyright 2026 The floorline Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "floorline/dataset_stats.hpp"

namespace floorline {
namespace {

using Row = std::array<double, kEntropyOrders>;

// Published percentages of the six lowest orders, converted to fractions.
constexpr Row kImage = {0.0975, 0.118, 0.0956, 0.0490, 0.0283, 0.0117};
constexpr Row kLow = {0.277, 0.101, 0.0171, 0.0035, 0.0012, 0.0003};
constexpr Row kMidLow = {0.0675, 0.201, 0.0872, 0.0297, 0.0109, 0.0032};
constexpr Row kMidHigh = {0.0279, 0.103, 0.148, 0.0707, 0.0386, 0.0120};
constexpr Row kHigh = {0.0180, 0.0666, 0.130, 0.0920, 0.0622, 0.0309};

long double ScalarEntropy(const Row& p) {
  long double h = 0;
  for (double v : p) {
    if (v > 0) h -= static_cast<long double>(v) * std::log(static_cast<long double>(v)) / std::log(10.0L);
  }
  return h;
}

TEST(ClassEntropy, PublishedRows) {
  EXPECT_NEAR(class_entropy(kImage), 0.436, 0.002);
  EXPECT_NEAR(class_entropy(kLow), 0.298, 0.002);
  EXPECT_NEAR(class_entropy(kMidLow), 0.386, 0.002);
  EXPECT_NEAR(class_entropy(kHigh), 0.442, 0.002);
}

TEST(ClassEntropy, MatchesScalarOracle) {
  for (const Row& r : {kImage, kLow, kMidLow, kMidHigh, kHigh}) {
    EXPECT_NEAR(class_entropy(r), static_cast<double>(ScalarEntropy(r)), 1e-14);
  }
}

TEST(ClassEntropy, EdgeCases) {
  const std::vector<double> certain = {1.0};
  EXPECT_EQ(class_entropy(certain), 0.0);
  const std::vector<double> zeros = {0.0, 0.0};
  EXPECT_EQ(class_entropy(zeros), 0.0);
  const std::vector<double> bad = {0.5, 1.2};
  try {
    class_entropy(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kProbabilityOutOfRange);
  }
  const std::vector<double> nan = {std::nan("")};
  EXPECT_THROW(class_entropy(nan), Error);
}

TEST(EntropyReport, BoundAverageIsUnweightedMean) {
  const auto report = entropy_report_from_probabilities({kImage, kLow, kMidLow, kMidHigh, kHigh});
  ASSERT_EQ(report.rows.size(), 5u);
  EXPECT_EQ(report.rows[3].given, "mid-high");
  const double mean = (class_entropy(kLow) + class_entropy(kMidLow) + class_entropy(kMidHigh) +
                       class_entropy(kHigh)) / 4.0;
  EXPECT_DOUBLE_EQ(report.bound_average, mean);
  EXPECT_NEAR(report.bound_average, 0.389, 0.002);
}

TEST(BoundOfRow, PartitionCoversEveryRowOnce) {
  for (int h = 1; h <= 40; ++h) {
    for (int n = 1; n <= 6; ++n) {
      const auto counts = bound_row_counts(h, n);
      int total = 0;
      for (int c : counts) total += c;
      EXPECT_EQ(total, h);
      int prev = 0;
      for (int r = h - 1; r >= 0; --r) {
        const int b = bound_of_row(r, h, n);
        EXPECT_GE(b, prev);  // bounds never decrease going up
        prev = b;
      }
      EXPECT_EQ(bound_of_row(h - 1, h, n), h >= n ? 0 : n - 1);
    }
  }
}

TEST(VerticalBoundDistribution, BottomQuarter) {
  LabelMask m(10, 20);
  for (int y = 15; y < 20; ++y) {
    for (int x = 0; x < 10; ++x) m.at(x, y) = 1;
  }
  const auto d = vertical_bound_distribution(m, 4);
  ASSERT_EQ(d.ratios.size(), 1u);
  EXPECT_EQ(d.ratios.at(1), (std::vector<double>{1, 0, 0, 0}));
}

TEST(VerticalBoundDistribution, FullHeightStripe) {
  LabelMask m(6, 40);
  for (int y = 0; y < 40; ++y) m.at(2, y) = 3;
  const auto d = vertical_bound_distribution(m, 4);
  for (double r : d.ratios.at(3)) EXPECT_DOUBLE_EQ(r, 0.25);
}

TEST(VerticalBoundDistribution, MatchesPixelCountOracle) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const int w = 3 + static_cast<int>(rng() % 10), h = 5 + static_cast<int>(rng() % 30);
    const int n = 1 + static_cast<int>(rng() % 5);
    LabelMask m(w, h);
    for (auto& v : m.labels()) v = static_cast<std::uint8_t>(rng() % 4);
    // oracle: rows [h*(n-1-b)/n, h*(n-b)/n) when n divides h, else base rows per bound
    const int base = h / n;
    std::map<int, std::vector<long>> counts;
    for (int y = 0; y < h; ++y) {
      const int from_bottom = h - 1 - y;
      int b = base == 0 ? n - 1 : from_bottom / base;
      if (b > n - 1) b = n - 1;
      for (int x = 0; x < w; ++x) {
        const int v = m.at(x, y);
        if (v == 0) continue;
        counts[v].resize(static_cast<std::size_t>(n));
        ++counts[v][static_cast<std::size_t>(b)];
      }
    }
    const auto d = vertical_bound_distribution(m, n);
    ASSERT_EQ(d.ratios.size(), counts.size());
    for (const auto& [order, c] : counts) {
      long total = 0;
      for (long v : c) total += v;
      for (std::size_t b = 0; b < c.size(); ++b) {
        EXPECT_EQ(d.ratios.at(order)[b], static_cast<double>(c[b]) / static_cast<double>(total));
      }
    }
  }
}

TEST(BoundProbabilityTable, OneBottomRow) {
  LabelMask m(100, 4);
  for (int x = 0; x < 100; ++x) m.at(x, 3) = 1;
  const std::vector<LabelMask> masks = {m};
  const auto report = bound_probability_table(masks);
  EXPECT_DOUBLE_EQ(report.rows[0].p[0], 0.25);
  EXPECT_NEAR(report.rows[0].entropy, -0.25 * std::log10(0.25), 1e-15);
  EXPECT_NEAR(report.rows[0].entropy, 0.1505, 1e-4);
  EXPECT_DOUBLE_EQ(report.rows[1].p[0], 1.0);
  EXPECT_EQ(report.rows[1].entropy, 0.0);
}

TEST(BoundProbabilityTable, NoFloorPixels) {
  const std::vector<LabelMask> masks = {LabelMask(8, 8)};
  const auto report = bound_probability_table(masks);
  for (const auto& row : report.rows) {
    for (double p : row.p) EXPECT_EQ(p, 0.0);
    EXPECT_EQ(row.entropy, 0.0);
  }
  EXPECT_THROW(bound_probability_table(std::span<const LabelMask>{}), Error);
}

TEST(Histograms, OrientationCounts) {
  Quad q;
  q.corners = {Point2{0, 0}, Point2{1, 0}, Point2{1, 1}, Point2{0, 1}};
  AnnotationRecord rec{"x", 10, 10, {}};
  for (auto o : {Orientation::kLeft, Orientation::kRight, Orientation::kFront}) {
    q.orientation = o;
    rec.facades.push_back(q);
  }
  const std::vector<AnnotationRecord> recs = {rec};
  const auto h = orientation_histogram(recs);
  EXPECT_EQ(h, (std::map<Orientation, long>{
                   {Orientation::kLeft, 1}, {Orientation::kRight, 1}, {Orientation::kFront, 1}}));
  EXPECT_TRUE(orientation_histogram({}).empty());
  EXPECT_TRUE(highest_floor_histogram({}).empty());
}

TEST(Histograms, PixelsPerOrderAndHighestFloor) {
  std::mt19937_64 rng(1);
  std::vector<LabelMask> masks;
  std::map<int, long> totals;
  std::map<int, long> highest;
  for (int i = 0; i < 5; ++i) {
    LabelMask m(12, 9);
    const int top = 1 + static_cast<int>(rng() % 5);
    int seen = 0;
    for (auto& v : m.labels()) {
      v = static_cast<std::uint8_t>(rng() % (top + 1));
      if (v) ++totals[v];
      seen = std::max<int>(seen, v);
    }
    if (seen) ++highest[seen];
    masks.push_back(m);
  }
  const auto avg = pixels_per_order(masks);
  ASSERT_EQ(avg.size(), totals.size());
  for (const auto& [order, n] : totals) EXPECT_DOUBLE_EQ(avg.at(order), n / 5.0);
  EXPECT_EQ(highest_floor_histogram(masks), highest);
}

}  // namespace
}  // namespace floorline
