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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "floorline/augmentation.hpp"
#include "floorline/metrics.hpp"
#include "oracles.hpp"

namespace floorline {
namespace {

using testing::CiOracle;
using testing::PixelOracle;
using testing::PixelCounts;

LabelMask Band(int w, int h, int y0, int y1, std::uint8_t order) {
  LabelMask m(w, h);
  for (int y = y0; y <= y1; ++y) {
    for (int x = 0; x < w; ++x) m.at(x, y) = order;
  }
  return m;
}

// ---- pixel F1 --------------------------------------------------------------

TEST(PixelF1, IdentityAndDisjoint) {
  const LabelMask gt = Band(10, 10, 4, 6, 2);
  EXPECT_EQ(pixel_f1(gt, gt).f1, 1.0);
  LabelMask inverse(10, 10);
  for (std::size_t i = 0; i < gt.size(); ++i) inverse.labels()[i] = gt.labels()[i] ? 0 : 1;
  const auto s = pixel_f1(gt, inverse);
  EXPECT_EQ(s.counts.tp, 0);
  EXPECT_EQ(s.f1, 0.0);
  EXPECT_EQ(pixel_f1(LabelMask(3, 3), LabelMask(3, 3)).f1, 1.0);
}

TEST(PixelF1, ThreeOneOne) {
  LabelMask gt(3, 2, std::vector<std::uint8_t>{1, 1, 1, 2, 0, 0});
  LabelMask pred(3, 2, std::vector<std::uint8_t>{1, 1, 1, 0, 2, 0});
  const auto s = pixel_f1(gt, pred);
  EXPECT_EQ(s.counts.tp, 3);
  EXPECT_EQ(s.counts.fp, 1);
  EXPECT_EQ(s.counts.fn, 1);
  EXPECT_DOUBLE_EQ(s.f1, 0.75);
}

TEST(PixelF1, WrongOrderIsBothFalsePositiveAndFalseNegative) {
  LabelMask gt(1, 1, std::vector<std::uint8_t>{2});
  LabelMask pred(1, 1, std::vector<std::uint8_t>{5});
  const auto c = pixel_counts(gt, pred);
  EXPECT_EQ(c[FloorBand::kLower].fn, 1);
  EXPECT_EQ(c[FloorBand::kUpper].fp, 1);
  EXPECT_EQ(c[FloorBand::kOverall].fp, 1);
  EXPECT_EQ(c[FloorBand::kOverall].fn, 1);
}

TEST(PixelF1, DimensionMismatch) {
  try {
    pixel_f1(LabelMask(3, 3), LabelMask(3, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimensionMismatch);
  }
}

TEST(PixelF1, RandomMasksMatchSetOracle) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 100; ++t) {
    const int w = 1 + static_cast<int>(rng() % 12), h = 1 + static_cast<int>(rng() % 12);
    LabelMask gt(w, h), pred(w, h);
    const int top = 1 + static_cast<int>(rng() % kMaxFloorOrder);
    for (auto& v : gt.labels()) v = static_cast<std::uint8_t>(rng() % (top + 1));
    for (auto& v : pred.labels()) v = static_cast<std::uint8_t>(rng() % (top + 1));
    const auto c = pixel_counts(gt, pred);
    const std::array<std::pair<int, int>, 3> ranges = {
        std::pair{1, kLowerFloorMaxOrder}, std::pair{kLowerFloorMaxOrder + 1, kMaxFloorOrder},
        std::pair{1, kMaxFloorOrder}};
    for (std::size_t b = 0; b < 3; ++b) {
      const PixelCounts o = PixelOracle(gt, pred, ranges[b].first, ranges[b].second);
      const auto& got = c.bands[b];
      EXPECT_EQ(got.tp, o.tp);
      EXPECT_EQ(got.fp, o.fp);
      EXPECT_EQ(got.fn, o.fn);
      const double f1 = o.tp + o.fp + o.fn == 0 ? 1.0 : 2.0 * o.tp / (2.0 * o.tp + o.fp + o.fn);
      EXPECT_NEAR(got.f1(), f1, 1e-12);
      EXPECT_GE(got.f1(), 0.0);
      EXPECT_LE(got.f1(), 1.0);
    }
  }
}

// ---- line confidence -------------------------------------------------------

TEST(LineConfidence, ContainedOverOtherAndEmpty) {
  const LabelMask gt = Band(40, 20, 8, 12, 3);
  EXPECT_EQ(line_confidence({2, 10, 37, 10, 3}, gt), 1.0);
  EXPECT_EQ(line_confidence({2, 2, 37, 2, 3}, gt), 0.0);
  EXPECT_EQ(line_confidence({2, 10, 37, 10, 2}, gt), 0.0);
  try {
    line_confidence({50, 30, 60, 30, 1}, gt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyRaster);
  }
}

TEST(LineConfidence, HalfInsideMatchesIndicatorSum) {
  LabelMask gt(40, 20);
  for (int y = 8; y <= 12; ++y) {
    for (int x = 0; x < 20; ++x) gt.at(x, y) = 1;
  }
  const Line5Tuple l{0, 10, 39, 10, 1};
  const auto [hit, total] = CiOracle(l, gt);
  EXPECT_EQ(total, 120);
  EXPECT_EQ(hit, 60);
  EXPECT_DOUBLE_EQ(line_confidence(l, gt), 0.5);
}

TEST(LineConfidence, RasterIsOrderIndependent) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Line5Tuple a{double(rng() % 50), double(rng() % 50), double(rng() % 50), double(rng() % 50), 1};
    const Line5Tuple b{a.xe, a.ye, a.xs, a.ys, 1};
    EXPECT_EQ(rasterize_line_3px(a, 50, 50), rasterize_line_3px(b, 50, 50));
  }
}

TEST(LineConfidence, RandomInstancesMatchOracle) {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(-5.0, 45.0);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    LabelMask gt(40, 30);
    for (auto& v : gt.labels()) v = static_cast<std::uint8_t>(rng() % 4);
    double xs = u(rng), xe = u(rng);
    if (xs > xe) std::swap(xs, xe);
    const Line5Tuple l{xs, u(rng) * 0.75, xe, u(rng) * 0.75, 1 + static_cast<int>(rng() % 3)};
    const auto [hit, total] = CiOracle(l, gt);
    if (total == 0) {
      EXPECT_THROW(line_support(l, gt), Error);
      continue;
    }
    const auto s = line_support(l, gt);
    EXPECT_EQ(s.total, total);
    EXPECT_EQ(s.matching, hit);
    EXPECT_NEAR(s.ci(), double(hit) / double(total), 1e-12);
    ++checked;
  }
  EXPECT_GT(checked, 80);
}

TEST(LineConfidence, InvariantUnderRelabelingOtherClasses) {
  std::mt19937_64 rng(3);
  LabelMask gt(30, 30);
  for (auto& v : gt.labels()) v = static_cast<std::uint8_t>(rng() % 5);
  const Line5Tuple l{1, 5, 28, 20, 2};
  LabelMask swapped = gt;
  for (auto& v : swapped.labels()) {
    if (v == 1) v = 4;
    else if (v == 4) v = 1;
  }
  const double ci = line_confidence(l, gt);
  EXPECT_EQ(line_confidence(l, swapped), ci);
  EXPECT_GE(ci, 0.0);
  EXPECT_LE(ci, 1.0);
}

// ---- line F1 ---------------------------------------------------------------

std::vector<GtLine> ThreeGtLines() {
  return {{0, {5, 50, 75, 46, 1}}, {0, {5, 30, 75, 27, 2}}, {0, {5, 10, 75, 8, 3}}};
}

LabelMask GtMask(const std::vector<GtLine>& gt) {
  std::vector<Line5Tuple> lines;
  for (const auto& g : gt) lines.push_back(g.line);
  return rasterize_floor_lines(lines, 3, 80, 60);
}

TEST(LineF1, PerfectPredictions) {
  const auto gt = ThreeGtLines();
  std::vector<Line5Tuple> pred;
  for (const auto& g : gt) pred.push_back(g.line);
  const auto s = line_f1(pred, gt, GtMask(gt));
  EXPECT_EQ(s.counts[FloorBand::kOverall].tp, 3);
  EXPECT_EQ(s.f1, 1.0);
}

TEST(LineF1, NoPredictions) {
  const auto gt = ThreeGtLines();
  const auto s = line_f1({}, gt, GtMask(gt));
  EXPECT_EQ(s.counts[FloorBand::kOverall].tp, 0);
  EXPECT_EQ(s.counts[FloorBand::kOverall].fn, 3);
  EXPECT_EQ(s.f1, 0.0);
}

TEST(LineF1, OffByOneOrder) {
  const auto gt = ThreeGtLines();
  std::vector<Line5Tuple> pred = {gt[0].line, gt[1].line, gt[2].line};
  pred[2].order = 2;  // third line mislabeled
  const auto s = line_f1(pred, gt, GtMask(gt));
  const auto& c = s.counts[FloorBand::kOverall];
  EXPECT_EQ(c.tp, 2);
  EXPECT_EQ(c.fp, 1);
  EXPECT_EQ(c.fn, 1);
  EXPECT_DOUBLE_EQ(s.f1, 4.0 / 6.0);
}

TEST(LineF1, DuplicatePredictionIsFalsePositive) {
  const auto gt = ThreeGtLines();
  std::vector<Line5Tuple> pred = {gt[0].line, gt[0].line, gt[1].line, gt[2].line};
  const auto c = line_f1(pred, gt, GtMask(gt)).counts[FloorBand::kOverall];
  EXPECT_EQ(c.tp, 3);
  EXPECT_EQ(c.fp, 1);
  EXPECT_EQ(c.fn, 0);
}

TEST(LineF1, SameOrderOnTwoFacadesMatchesTheOverlappingOne) {
  const std::vector<GtLine> gt = {{0, {0, 40, 30, 40, 1}}, {1, {45, 50, 79, 50, 1}}};
  const LabelMask mask = GtMask(gt);
  const std::vector<Line5Tuple> pred = {{46, 50, 78, 50, 1}};
  const auto c = line_f1(pred, gt, mask).counts[FloorBand::kOverall];
  EXPECT_EQ(c.tp, 1);
  EXPECT_EQ(c.fn, 1);
}

// ---- dataset ---------------------------------------------------------------

EvalPair PerfectPair() {
  const auto gt = ThreeGtLines();
  EvalPair p{GtMask(gt), GtMask(gt), {}, gt};
  for (const auto& g : gt) p.pred_lines.push_back(g.line);
  return p;
}

EvalPair WrongPair() {
  const auto gt = ThreeGtLines();
  EvalPair p{LabelMask(80, 60), GtMask(gt), {{5, 55, 75, 55, 4}}, gt};
  return p;
}

TEST(EvaluateDataset, IdenticalPairsScoreOne) {
  const std::vector<EvalPair> pairs = {PerfectPair(), PerfectPair()};
  const auto r = evaluate_dataset(pairs);
  for (auto b : {FloorBand::kLower, FloorBand::kUpper, FloorBand::kOverall}) {
    EXPECT_EQ(r.pixel_f1(b), 1.0);
    EXPECT_EQ(r.line_f1(b), 1.0);
  }
}

TEST(EvaluateDataset, PooledCountsAreSums) {
  const std::vector<EvalPair> pairs = {PerfectPair(), WrongPair()};
  const auto r = evaluate_dataset(pairs, 2);
  const auto a = evaluate_pair(pairs[0]);
  const auto b = evaluate_pair(pairs[1]);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(r.pixel.bands[k].tp, a.pixel.bands[k].tp + b.pixel.bands[k].tp);
    EXPECT_EQ(r.pixel.bands[k].fp, a.pixel.bands[k].fp + b.pixel.bands[k].fp);
    EXPECT_EQ(r.pixel.bands[k].fn, a.pixel.bands[k].fn + b.pixel.bands[k].fn);
    EXPECT_EQ(r.line.bands[k].tp, a.line.bands[k].tp + b.line.bands[k].tp);
    EXPECT_EQ(r.line.bands[k].fp, a.line.bands[k].fp + b.line.bands[k].fp);
    EXPECT_EQ(r.line.bands[k].fn, a.line.bands[k].fn + b.line.bands[k].fn);
  }
  EXPECT_EQ(r.line[FloorBand::kUpper].fp, 1);
  EXPECT_EQ(r.images, 2u);
}

TEST(EvaluateDataset, SingletonAndEmpty) {
  const std::vector<EvalPair> one = {WrongPair()};
  const auto r = evaluate_dataset(one);
  const auto& p = one[0];
  EXPECT_EQ(r.pixel_f1(FloorBand::kOverall), pixel_f1(p.gt_mask, p.pred_mask).f1);
  EXPECT_EQ(r.line_f1(FloorBand::kOverall), line_f1(p.pred_lines, p.gt_lines, p.gt_mask).f1);
  try {
    evaluate_dataset({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kEmptyDataset);
  }
}

}  // namespace
}  // namespace floorline
