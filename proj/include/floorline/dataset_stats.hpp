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

// Dataset characterization: histograms, vertical-bound distributions of
// floor-level line pixels, and the per-stratum class-entropy table.

#ifndef FLOORLINE_DATASET_STATS_HPP_
#define FLOORLINE_DATASET_STATS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "floorline/errors.hpp"
#include "floorline/geometry.hpp"
#include "floorline/io.hpp"

namespace floorline {

/// Orders covered by the entropy table.
inline constexpr int kEntropyOrders = 6;
inline constexpr int kDefaultBounds = 4;

/// -sum p_i log10 p_i with 0 log 0 = 0.
inline double class_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorKind::kProbabilityOutOfRange,
                  "probability " + std::to_string(v) + " outside [0, 1]");
    }
    if (v > 0.0) h -= v * std::log10(v);
  }
  return h;
}

/// Vertical bound of `row` when `height` rows are split into `n_bounds`
/// equal strata counted from the bottom (0 = low). Each stratum gets
/// floor(height / n_bounds) rows; the remainder goes to the topmost one.
inline int bound_of_row(int row, int height, int n_bounds) {
  const int base = height / n_bounds;
  const int from_bottom = height - 1 - row;
  if (base == 0) return n_bounds - 1;
  return std::min(from_bottom / base, n_bounds - 1);
}

/// Row count of each bound, index 0 = low.
inline std::vector<int> bound_row_counts(int height, int n_bounds) {
  std::vector<int> counts(static_cast<std::size_t>(n_bounds), 0);
  for (int r = 0; r < height; ++r) ++counts[static_cast<std::size_t>(bound_of_row(r, height, n_bounds))];
  return counts;
}

struct VerticalBoundDistribution {
  int n_bounds = kDefaultBounds;
  /// order -> per-bound ratios (index 0 = low); only orders with pixels.
  std::map<int, std::vector<double>> ratios;
};

namespace detail {

// counts[order][bound] for orders 0..10.
inline std::vector<std::vector<long>> order_bound_counts(const LabelMask& mask, int n_bounds) {
  std::vector<std::vector<long>> counts(kMaxFloorOrder + 1,
                                        std::vector<long>(static_cast<std::size_t>(n_bounds), 0));
  for (int y = 0; y < mask.height(); ++y) {
    const auto b = static_cast<std::size_t>(bound_of_row(y, mask.height(), n_bounds));
    for (int x = 0; x < mask.width(); ++x) {
      const std::uint8_t v = mask.at(x, y);
      if (v <= kMaxFloorOrder) ++counts[v][b];
    }
  }
  return counts;
}

inline void require_bounds(int n_bounds) {
  if (n_bounds < 1) throw Error(ErrorKind::kInvalidArgument, "n_bounds must be >= 1");
}

}  // namespace detail

inline VerticalBoundDistribution vertical_bound_distribution(const LabelMask& mask,
                                                             int n_bounds = kDefaultBounds) {
  detail::require_bounds(n_bounds);
  VerticalBoundDistribution out;
  out.n_bounds = n_bounds;
  const auto counts = detail::order_bound_counts(mask, n_bounds);
  for (int order = 1; order <= kMaxFloorOrder; ++order) {
    long total = 0;
    for (long c : counts[order]) total += c;
    if (total == 0) continue;
    std::vector<double> r(static_cast<std::size_t>(n_bounds));
    for (std::size_t b = 0; b < r.size(); ++b) {
      r[b] = static_cast<double>(counts[order][b]) / static_cast<double>(total);
    }
    out.ratios[order] = std::move(r);
  }
  return out;
}

/// Sums per-mask ratios of each order over the dataset, then renormalizes.
inline VerticalBoundDistribution dataset_bound_distribution(std::span<const LabelMask> masks,
                                                            int n_bounds = kDefaultBounds) {
  detail::require_bounds(n_bounds);
  VerticalBoundDistribution out;
  out.n_bounds = n_bounds;
  for (const auto& m : masks) {
    for (const auto& [order, ratios] : vertical_bound_distribution(m, n_bounds).ratios) {
      auto& acc = out.ratios[order];
      acc.resize(static_cast<std::size_t>(n_bounds), 0.0);
      for (std::size_t b = 0; b < ratios.size(); ++b) acc[b] += ratios[b];
    }
  }
  for (auto& [order, acc] : out.ratios) {
    double s = 0.0;
    for (double v : acc) s += v;
    for (double& v : acc) v /= s;
  }
  return out;
}

struct EntropyRow {
  std::string given;
  std::array<double, kEntropyOrders> p{};
  double entropy = 0.0;
};

/// Rows: image, low, mid-low, mid-high, high.
struct EntropyReport {
  std::vector<EntropyRow> rows;
  /// Unweighted mean of the four bound entropies.
  double bound_average = 0.0;
};

inline const std::array<const char*, 5>& entropy_row_names() {
  static const std::array<const char*, 5> names = {"image", "low", "mid-low", "mid-high", "high"};
  return names;
}

/// Builds the report from already-known probabilities (fractions, not
/// percentages), one row per stratum in entropy_row_names() order.
inline EntropyReport entropy_report_from_probabilities(
    const std::array<std::array<double, kEntropyOrders>, 5>& probabilities) {
  EntropyReport report;
  for (std::size_t i = 0; i < 5; ++i) {
    EntropyRow row{entropy_row_names()[i], probabilities[i], class_entropy(probabilities[i])};
    report.rows.push_back(row);
  }
  double s = 0.0;
  for (std::size_t i = 1; i < 5; ++i) s += report.rows[i].entropy;
  report.bound_average = s / 4.0;
  return report;
}

/// p_i = pixels of order i in the stratum / all pixels in the stratum, pooled
/// over every mask. Orders above 6 are counted in the denominator only.
inline EntropyReport bound_probability_table(std::span<const LabelMask> masks) {
  if (masks.empty()) throw Error(ErrorKind::kEmptyDataset, "no masks given");
  // stratum 0 = whole image, 1..4 = bounds low..high
  std::array<std::array<long, kEntropyOrders + 1>, 5> hits{};
  std::array<long, 5> totals{};
  for (const auto& m : masks) {
    for (int y = 0; y < m.height(); ++y) {
      const auto stratum = static_cast<std::size_t>(1 + bound_of_row(y, m.height(), kDefaultBounds));
      for (int x = 0; x < m.width(); ++x) {
        const std::uint8_t v = m.at(x, y);
        ++totals[0];
        ++totals[stratum];
        if (v >= 1 && v <= kEntropyOrders) {
          ++hits[0][v];
          ++hits[stratum][v];
        }
      }
    }
  }
  std::array<std::array<double, kEntropyOrders>, 5> p{};
  for (std::size_t s = 0; s < 5; ++s) {
    if (totals[s] == 0) continue;
    for (int i = 1; i <= kEntropyOrders; ++i) {
      p[s][static_cast<std::size_t>(i - 1)] =
          static_cast<double>(hits[s][static_cast<std::size_t>(i)]) / static_cast<double>(totals[s]);
    }
  }
  return entropy_report_from_probabilities(p);
}

inline std::map<Orientation, long> orientation_histogram(
    std::span<const AnnotationRecord> annotations) {
  std::map<Orientation, long> h;
  for (const auto& rec : annotations) {
    for (const auto& q : rec.facades) ++h[q.orientation];
  }
  return h;
}

/// Highest floor order present per mask; masks without floor pixels are skipped.
inline std::map<int, long> highest_floor_histogram(std::span<const LabelMask> masks) {
  std::map<int, long> h;
  for (const auto& m : masks) {
    int highest = 0;
    for (std::uint8_t v : m.labels()) {
      if (v <= kMaxFloorOrder) highest = std::max(highest, static_cast<int>(v));
    }
    if (highest > 0) ++h[highest];
  }
  return h;
}

/// Average pixel count per order over all masks (masks lacking an order
/// contribute zero to its average).
inline std::map<int, double> pixels_per_order(std::span<const LabelMask> masks) {
  std::map<int, long> totals;
  for (const auto& m : masks) {
    for (std::uint8_t v : m.labels()) {
      if (v >= 1 && v <= kMaxFloorOrder) ++totals[v];
    }
  }
  std::map<int, double> out;
  for (const auto& [order, n] : totals) {
    out[order] = static_cast<double>(n) / static_cast<double>(masks.size());
  }
  return out;
}

}  // namespace floorline

#endif  // FLOORLINE_DATASET_STATS_HPP_
