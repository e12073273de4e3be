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

// Pixel-wise and line-wise F1 scores, with the lower-floor (orders 1-3) /
// upper-floor (orders >= 4) split. Dataset scores are micro-averaged: counts
// are pooled over images before any F1 is computed.

#ifndef FLOORLINE_METRICS_HPP_
#define FLOORLINE_METRICS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "floorline/errors.hpp"
#include "floorline/geometry.hpp"
#include "floorline/parallel.hpp"
#include "floorline/postprocess.hpp"

namespace floorline {

inline constexpr int kLowerFloorMaxOrder = 3;
inline constexpr double kLineTruePositiveCi = 0.5;

struct ConfusionCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  /// 2TP / (2TP + FP + FN), or 1 when all counts are zero.
  double f1() const {
    const long denom = 2 * tp + fp + fn;
    return denom == 0 ? 1.0 : static_cast<double>(2 * tp) / static_cast<double>(denom);
  }

  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

enum class FloorBand : std::size_t { kLower = 0, kUpper = 1, kOverall = 2 };

/// Counts for lower floors, upper floors, and everything.
struct SplitCounts {
  std::array<ConfusionCounts, 3> bands{};

  ConfusionCounts& operator[](FloorBand b) { return bands[static_cast<std::size_t>(b)]; }
  const ConfusionCounts& operator[](FloorBand b) const {
    return bands[static_cast<std::size_t>(b)];
  }

  SplitCounts& operator+=(const SplitCounts& o) {
    for (std::size_t i = 0; i < 3; ++i) bands[i] += o.bands[i];
    return *this;
  }
  friend bool operator==(const SplitCounts&, const SplitCounts&) = default;
};

inline FloorBand band_of(int order) {
  return order <= kLowerFloorMaxOrder ? FloorBand::kLower : FloorBand::kUpper;
}

namespace detail {

inline void tally(SplitCounts& c, int order, long ConfusionCounts::*field) {
  ++(c[band_of(order)].*field);
  ++(c[FloorBand::kOverall].*field);
}

}  // namespace detail

/// Counts over (pixel, order) pairs with order != other.
inline SplitCounts pixel_counts(const LabelMask& gt, const LabelMask& pred) {
  if (gt.width() != pred.width() || gt.height() != pred.height()) {
    throw Error(ErrorKind::kDimensionMismatch, "ground truth and prediction differ in size");
  }
  SplitCounts c;
  const auto g = gt.labels();
  const auto p = pred.labels();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] != 0 && g[i] == p[i]) {
      detail::tally(c, g[i], &ConfusionCounts::tp);
      continue;
    }
    if (p[i] != 0) detail::tally(c, p[i], &ConfusionCounts::fp);
    if (g[i] != 0) detail::tally(c, g[i], &ConfusionCounts::fn);
  }
  return c;
}

struct Score {
  ConfusionCounts counts;
  double f1 = 1.0;
};

inline Score pixel_f1(const LabelMask& gt, const LabelMask& pred) {
  const auto c = pixel_counts(gt, pred)[FloorBand::kOverall];
  return {c, c.f1()};
}

namespace detail {

inline long floor_div(long a, long b) {  // b > 0
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

}  // namespace detail

/// Bresenham-style centerline between the rounded endpoints: one pixel per
/// step along the major axis, the minor coordinate rounded to the nearest
/// integer with ties going to the smaller one. Each centerline pixel is
/// dilated by one row above and below; the result is clipped to the image and
/// deduplicated (raster order). Independent of endpoint order.
inline std::vector<Pixel> rasterize_line_3px(const Line5Tuple& line, int width, int height) {
  const auto round_coord = [](double v) {
    return static_cast<long>(std::clamp(std::round(v), -1e9, 1e9));
  };
  const long x0 = round_coord(line.xs), y0 = round_coord(line.ys);
  const long x1 = round_coord(line.xe), y1 = round_coord(line.ye);
  std::vector<Pixel> out;
  const auto emit = [&](long x, long y) {
    for (long dy = -1; dy <= 1; ++dy) {
      if (x >= 0 && x < width && y + dy >= 0 && y + dy < height) {
        out.push_back({static_cast<int>(x), static_cast<int>(y + dy)});
      }
    }
  };
  const long dx = x1 - x0, dy = y1 - y0;
  const bool shallow = std::labs(dx) >= std::labs(dy);
  const long n = shallow ? std::labs(dx) : std::labs(dy);
  if (n == 0) {
    emit(x0, y0);
  } else {
    const long major_step = (shallow ? dx : dy) > 0 ? 1 : -1;
    const long minor_delta = shallow ? dy : dx;
    for (long i = 0; i <= n; ++i) {
      // minor offset = ceil(i * delta / n - 1/2)
      const long off = -detail::floor_div(n - 2 * i * minor_delta, 2 * n);
      if (shallow) {
        emit(x0 + major_step * i, y0 + off);
      } else {
        emit(x0 + off, y0 + major_step * i);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct LineSupport {
  long matching = 0;
  long total = 0;
  double ci() const { return static_cast<double>(matching) / static_cast<double>(total); }
};

inline LineSupport line_support(const Line5Tuple& line, const LabelMask& gt) {
  const auto pixels = rasterize_line_3px(line, gt.width(), gt.height());
  if (pixels.empty()) throw Error(ErrorKind::kEmptyRaster, "line covers no pixel of the image");
  LineSupport s{0, static_cast<long>(pixels.size())};
  for (const auto& p : pixels) {
    if (gt.at(p.x, p.y) == line.order) ++s.matching;
  }
  return s;
}

/// Fraction of the line's 3-pixel-wide raster whose ground-truth label equals
/// the line's order.
inline double line_confidence(const Line5Tuple& line, const LabelMask& gt) {
  return line_support(line, gt).ci();
}

/// Ground-truth line tagged with the facade it belongs to.
struct GtLine {
  int facade_id = 0;
  Line5Tuple line;
};

struct LineScore {
  SplitCounts counts;
  double f1 = 1.0;
};

namespace detail {

// Candidate gt line for a prediction: same order, overlapping x-range, and
// the smallest vertical gap at the middle of the overlap.
inline long pick_gt(const Line5Tuple& pred, std::span<const GtLine> gt_lines,
                    const std::vector<bool>& consumed) {
  long best = -1;
  double best_gap = 0.0;
  const auto y_at = [](const Line5Tuple& l, double x) {
    return l.xe == l.xs ? l.mean_y() : l.ys + (l.ye - l.ys) * (x - l.xs) / (l.xe - l.xs);
  };
  for (std::size_t k = 0; k < gt_lines.size(); ++k) {
    const auto& g = gt_lines[k].line;
    if (consumed[k] || g.order != pred.order) continue;
    const double lo = std::max(g.xs, pred.xs), hi = std::min(g.xe, pred.xe);
    if (lo > hi) continue;
    const double mid = 0.5 * (lo + hi);
    const double gap = std::abs(y_at(g, mid) - y_at(pred, mid));
    if (best < 0 || gap < best_gap) {
      best = static_cast<long>(k);
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace detail

/// A prediction with CI > 0.5 is a true positive when it can consume a
/// not-yet-matched gt line of the same order on the same facade (the one
/// sharing its x-range and lying closest); otherwise it is a false positive.
/// Unconsumed gt lines are false negatives.
inline LineScore line_f1(std::span<const Line5Tuple> pred_lines, std::span<const GtLine> gt_lines,
                         const LabelMask& gt) {
  LineScore s;
  std::vector<bool> consumed(gt_lines.size(), false);
  for (const auto& pred : pred_lines) {
    const double ci = line_confidence(pred, gt);
    long match = -1;
    if (ci > kLineTruePositiveCi) match = detail::pick_gt(pred, gt_lines, consumed);
    if (match >= 0) {
      consumed[static_cast<std::size_t>(match)] = true;
      detail::tally(s.counts, pred.order, &ConfusionCounts::tp);
    } else {
      detail::tally(s.counts, pred.order, &ConfusionCounts::fp);
    }
  }
  for (std::size_t k = 0; k < gt_lines.size(); ++k) {
    if (!consumed[k]) detail::tally(s.counts, gt_lines[k].line.order, &ConfusionCounts::fn);
  }
  s.f1 = s.counts[FloorBand::kOverall].f1();
  return s;
}

/// Flattens a line-results document into gt lines tagged by facade id.
inline std::vector<GtLine> gt_lines_from(const LineResults& results) {
  std::vector<GtLine> out;
  for (const auto& f : results.facades) {
    for (const auto& l : f.lines) out.push_back({f.id, l});
  }
  return out;
}

inline std::vector<Line5Tuple> lines_from(const LineResults& results) {
  std::vector<Line5Tuple> out;
  for (const auto& f : results.facades) out.insert(out.end(), f.lines.begin(), f.lines.end());
  return out;
}

struct EvalPair {
  LabelMask pred_mask;
  LabelMask gt_mask;
  std::vector<Line5Tuple> pred_lines;
  std::vector<GtLine> gt_lines;
};

struct EvalReport {
  std::size_t images = 0;
  SplitCounts pixel;
  SplitCounts line;

  double pixel_f1(FloorBand b) const { return pixel[b].f1(); }
  double line_f1(FloorBand b) const { return line[b].f1(); }
};

struct ImageCounts {
  SplitCounts pixel;
  SplitCounts line;
};

inline ImageCounts evaluate_pair(const EvalPair& pair) {
  return {pixel_counts(pair.gt_mask, pair.pred_mask),
          line_f1(pair.pred_lines, pair.gt_lines, pair.gt_mask).counts};
}

/// Micro-averaged report: per-image counts are summed before scoring.
inline EvalReport evaluate_dataset(std::span<const EvalPair> pairs, unsigned threads = 1) {
  if (pairs.empty()) throw Error(ErrorKind::kEmptyDataset, "no image pairs to evaluate");
  std::vector<ImageCounts> per_image(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) { per_image[i] = evaluate_pair(pairs[i]); });
  EvalReport r;
  r.images = pairs.size();
  for (const auto& c : per_image) {
    r.pixel += c.pixel;
    r.line += c.line;
  }
  return r;
}

}  // namespace floorline

#endif  // FLOORLINE_METRICS_HPP_
