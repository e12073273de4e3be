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

// Synthetic sample generation: rectified facade masks are warped onto
// annotated street-view quads and composited in painter's order.

#ifndef FLOORLINE_AUGMENTATION_HPP_
#define FLOORLINE_AUGMENTATION_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "floorline/errors.hpp"
#include "floorline/geometry.hpp"
#include "floorline/palette.hpp"

namespace floorline {

/// Source label -> simplified facade label (other/window/door/shop).
using LabelMapping = std::map<std::uint8_t, std::uint8_t>;

/// Toy default for CMP-style base labels (1 background, 2 facade, 3 window,
/// 4 door, 5 cornice, 6 sill, 7 balcony, 8 blind, 9 deco, 10 molding,
/// 11 pillar, 12 shop). Everything except window/door/shop collapses to other.
inline LabelMapping cmp_default_mapping() {
  LabelMapping m;
  for (std::uint8_t code = 0; code <= 12; ++code) m[code] = facade_label::kOther;
  m[3] = facade_label::kWindow;
  m[4] = facade_label::kDoor;
  m[12] = facade_label::kShop;
  return m;
}

inline LabelMask simplify_semantics(const LabelMask& raw, const LabelMapping& mapping) {
  std::array<std::optional<std::uint8_t>, 256> table{};
  for (const auto& [from, to] : mapping) {
    if (to > facade_label::kShop) {
      throw Error(ErrorKind::kInvalidMapping,
                  "mapping target " + std::to_string(to) + " is not other/window/door/shop");
    }
    table[from] = to;
  }
  std::string missing;
  for (std::uint8_t v : raw.label_set()) {
    if (!table[v]) {
      if (!missing.empty()) missing += ", ";
      missing += std::to_string(v);
    }
  }
  if (!missing.empty()) throw Error(ErrorKind::kUnmappedLabel, "unmapped codes: " + missing);

  LabelMask out = raw;
  for (std::uint8_t& v : out.labels()) v = *table[v];
  return out;
}

/// Front-facing facade semantics plus its annotated floor-level lines.
struct RectifiedFacade {
  LabelMask semantic;  // other/window/door/shop only
  LabelMask floor;     // floor palette

  int width() const { return semantic.width(); }
  int height() const { return semantic.height(); }
};

/// Checks shared dimensions, palettes, the contiguous 1..k order prefix, and
/// that higher orders sit strictly higher (smaller mean row).
inline void validate(const RectifiedFacade& f) {
  if (f.semantic.empty() || f.floor.empty()) {
    throw Error(ErrorKind::kInvalidFacade, "facade masks must be non-empty");
  }
  if (f.semantic.width() != f.floor.width() || f.semantic.height() != f.floor.height()) {
    throw Error(ErrorKind::kInvalidFacade, "semantic and floor masks differ in size");
  }
  for (std::uint8_t v : f.semantic.label_set()) {
    if (v > facade_label::kShop) {
      throw Error(ErrorKind::kInvalidFacade,
                  "semantic mask contains code " + std::to_string(v) +
                      " (only other/window/door/shop allowed)");
    }
  }
  validate_palette(f.floor, MaskRole::kFloor);

  std::array<double, kMaxFloorOrder + 1> row_sum{};
  std::array<long, kMaxFloorOrder + 1> count{};
  for (int y = 0; y < f.floor.height(); ++y) {
    for (int x = 0; x < f.floor.width(); ++x) {
      const std::uint8_t v = f.floor.at(x, y);
      if (v == 0) continue;
      row_sum[v] += y;
      ++count[v];
    }
  }
  int k = 0;
  while (k < kMaxFloorOrder && count[k + 1] > 0) ++k;
  if (k == 0) throw Error(ErrorKind::kInvalidFacade, "facade has no floor-level line pixels");
  for (int j = k + 1; j <= kMaxFloorOrder; ++j) {
    if (count[j] > 0) {
      throw Error(ErrorKind::kInvalidFacade,
                  "floor orders are not a contiguous prefix: order " + std::to_string(j) +
                      " present but " + std::to_string(k + 1) + " missing");
    }
  }
  for (int j = 2; j <= k; ++j) {
    const double prev = row_sum[j - 1] / static_cast<double>(count[j - 1]);
    const double cur = row_sum[j] / static_cast<double>(count[j]);
    if (!(cur < prev)) {
      throw Error(ErrorKind::kInvalidFacade,
                  "order " + std::to_string(j) + " does not sit above order " +
                      std::to_string(j - 1));
    }
  }
}

/// Axis-aligned quad spanning the facade's full pixel extent [0,W]x[0,H].
inline Quad full_extent_quad(int width, int height) {
  Quad q;
  q.corners = {Point2{0, 0}, Point2{static_cast<double>(width), 0},
               Point2{static_cast<double>(width), static_cast<double>(height)},
               Point2{0, static_cast<double>(height)}};
  return q;
}

struct Placement {
  int facade_id = 0;
  Quad quad;
  Homography homography;  // rectified facade -> street canvas
};

struct AugmentedSample {
  LabelMask semantic;
  LabelMask floor;
  std::vector<Placement> provenance;
  std::uint64_t seed = 0;
};

struct FacadePlacement {
  const RectifiedFacade* facade = nullptr;
  Quad quad;
};

namespace detail {

inline void composite(const RectifiedFacade& facade, const Quad& quad, const Homography& h,
                      AugmentedSample& sample) {
  const Homography inv = invert_homography(h);
  double min_x = quad.corners[0].x, max_x = min_x;
  double min_y = quad.corners[0].y, max_y = min_y;
  for (const auto& p : quad.corners) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const int x0 = std::max(0, static_cast<int>(std::floor(min_x)));
  const int x1 = std::min(sample.semantic.width() - 1, static_cast<int>(std::ceil(max_x)));
  const int y0 = std::max(0, static_cast<int>(std::floor(min_y)));
  const int y1 = std::min(sample.semantic.height() - 1, static_cast<int>(std::ceil(max_y)));
  const std::uint8_t stamp = orientation_code(quad.orientation);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const Point2 p{static_cast<double>(x), static_cast<double>(y)};
      if (!contains(quad, p)) continue;
      const Point2 s = apply_homography(inv, p);
      const int sx = static_cast<int>(
          std::clamp(nearest_index(s.x), 0.0, static_cast<double>(facade.width() - 1)));
      const int sy = static_cast<int>(
          std::clamp(nearest_index(s.y), 0.0, static_cast<double>(facade.height() - 1)));
      const std::uint8_t sem = facade.semantic.at(sx, sy);
      sample.semantic.at(x, y) = sem == facade_label::kOther ? stamp : sem;
      sample.floor.at(x, y) = facade.floor.at(sx, sy);
    }
  }
}

}  // namespace detail

/// Warps each facade onto its quad and composites in list order, so later
/// facades overwrite earlier ones. Facade-background pixels inside a quad are
/// stamped with the quad's orientation code. The result depends only on the
/// inputs; `seed` is carried into the sample for provenance.
inline AugmentedSample generate_sample(std::span<const FacadePlacement> facades, int canvas_w,
                                       int canvas_h, std::uint64_t seed) {
  AugmentedSample sample{LabelMask(canvas_w, canvas_h, facade_label::kOther),
                         LabelMask(canvas_w, canvas_h, floor_label::kOther),
                         {},
                         seed};
  for (std::size_t i = 0; i < facades.size(); ++i) {
    const auto& [facade, quad] = facades[i];
    if (facade == nullptr) throw Error(ErrorKind::kInvalidArgument, "null facade");
    validate(*facade);
    for (const auto& c : quad.corners) {
      if (!(c.x >= 0 && c.x <= canvas_w && c.y >= 0 && c.y <= canvas_h)) {
        throw Error(ErrorKind::kInvalidArgument,
                    "quad " + std::to_string(i) + " extends beyond the canvas");
      }
    }
    Quad src = full_extent_quad(facade->width(), facade->height());
    src.orientation = quad.orientation;
    const Homography h = homography_from_quads(src, quad);
    detail::composite(*facade, quad, h, sample);
    sample.provenance.push_back({static_cast<int>(i), quad, h});
  }
  return sample;
}

/// Seeded choice of a facade index for each of `n_quads` quads.
inline std::vector<std::size_t> pair_facades(std::size_t n_quads, std::size_t n_facades,
                                             std::uint64_t seed) {
  if (n_facades == 0) throw Error(ErrorKind::kInvalidArgument, "no facades to pair");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> out(n_quads);
  for (auto& v : out) v = static_cast<std::size_t>(rng() % n_facades);
  return out;
}

/// Paints each line as a vertical band: in every integer column between the
/// endpoints, rows within band_px/2 of the segment get the line's order.
inline LabelMask rasterize_floor_lines(std::span<const Line5Tuple> lines, int band_px, int width,
                                       int height) {
  if (band_px < 1) throw Error(ErrorKind::kInvalidArgument, "band_px must be >= 1");
  LabelMask out(width, height, floor_label::kOther);
  const double half = 0.5 * band_px;
  for (const auto& line : lines) {
    validate(line);
    const int c0 = static_cast<int>(std::clamp(std::ceil(line.xs), 0.0, double(width)));
    const int c1 = static_cast<int>(std::clamp(std::floor(line.xe), -1.0, double(width - 1)));
    for (int c = c0; c <= c1; ++c) {
      const double yc = line.xe == line.xs
                            ? line.ys
                            : line.ys + (line.ye - line.ys) * (c - line.xs) / (line.xe - line.xs);
      const int r0 = static_cast<int>(std::clamp(std::ceil(yc - half), 0.0, double(height)));
      const int r1 = static_cast<int>(std::clamp(std::floor(yc + half), -1.0, double(height - 1)));
      for (int r = r0; r <= r1; ++r) out.at(c, r) = static_cast<std::uint8_t>(line.order);
    }
  }
  return out;
}

}  // namespace floorline

#endif  // FLOORLINE_AUGMENTATION_HPP_
