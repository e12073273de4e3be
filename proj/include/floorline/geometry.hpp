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

// Projective geometry primitives and the label/line types shared by every
// other module. Pixel centers sit at integer coordinates, origin top-left,
// y growing downward.

#ifndef FLOORLINE_GEOMETRY_HPP_
#define FLOORLINE_GEOMETRY_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "floorline/errors.hpp"

namespace floorline {

inline constexpr int kMaxFloorOrder = 10;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline bool is_finite(const Point2& p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

/// One floor-level line: endpoints stored left-to-right plus its floor order.
struct Line5Tuple {
  double xs = 0.0;
  double ys = 0.0;
  double xe = 0.0;
  double ye = 0.0;
  int order = 1;

  double mean_y() const { return 0.5 * (ys + ye); }

  friend bool operator==(const Line5Tuple&, const Line5Tuple&) = default;
};

inline void validate(const Line5Tuple& line) {
  if (!std::isfinite(line.xs) || !std::isfinite(line.ys) ||
      !std::isfinite(line.xe) || !std::isfinite(line.ye)) {
    throw Error(ErrorKind::kInvalidArgument, "line endpoints must be finite");
  }
  if (line.xs > line.xe) {
    throw Error(ErrorKind::kInvalidArgument, "line endpoints must satisfy xs <= xe");
  }
  if (line.order < 1 || line.order > kMaxFloorOrder) {
    throw Error(ErrorKind::kInvalidArgument,
                "line order " + std::to_string(line.order) + " outside 1..10");
  }
}

enum class Orientation : std::uint8_t { kLeft, kRight, kFront };

constexpr std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::kLeft: return "left";
    case Orientation::kRight: return "right";
    case Orientation::kFront: return "front";
  }
  return "front";
}

inline std::optional<Orientation> parse_orientation(std::string_view s) {
  if (s == "left") return Orientation::kLeft;
  if (s == "right") return Orientation::kRight;
  if (s == "front") return Orientation::kFront;
  return std::nullopt;
}

/// Corners ordered top-left, top-right, bottom-right, bottom-left.
struct Quad {
  std::array<Point2, 4> corners{};
  Orientation orientation = Orientation::kFront;

  friend bool operator==(const Quad&, const Quad&) = default;
};

/// Signed area (positive for the clockwise-on-screen corner order above).
inline double signed_area(const Quad& q) {
  double a = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2& p = q.corners[i];
    const Point2& n = q.corners[(i + 1) % 4];
    a += p.x * n.y - n.x * p.y;
  }
  return 0.5 * a;
}

/// True when all four turns have the same nonzero sign. For four vertices this
/// also rules out self-intersection (a bow-tie alternates turn signs).
inline bool is_strictly_convex(const Quad& q, double tol = 1e-12) {
  int sign = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2& a = q.corners[i];
    const Point2& b = q.corners[(i + 1) % 4];
    const Point2& c = q.corners[(i + 2) % 4];
    if (!is_finite(a)) return false;
    const double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
    const double scale = std::hypot(b.x - a.x, b.y - a.y) * std::hypot(c.x - b.x, c.y - b.y);
    if (std::abs(cross) <= tol * std::max(scale, 1.0)) return false;
    const int s = cross > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return true;
}

/// Closed point-in-convex-quad test with an absolute slack in pixels.
inline bool contains(const Quad& q, const Point2& p, double slack = 1e-9) {
  const double orient = signed_area(q) >= 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2& a = q.corners[i];
    const Point2& b = q.corners[(i + 1) % 4];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (orient * cross < -slack * len) return false;
  }
  return true;
}

/// 3x3 projective map, always normalized so m[2][2] == 1.
class Homography {
 public:
  using Matrix = std::array<std::array<double, 3>, 3>;

  Homography() : m_{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}} {}

  /// Normalizes by m[2][2]; throws SingularMatrix when that is impossible or
  /// the normalized determinant is below 1e-12 in magnitude.
  explicit Homography(const Matrix& m) : m_(m) {
    const double s = m_[2][2];
    double norm = 0.0;
    for (const auto& row : m_) {
      for (double v : row) {
        if (!std::isfinite(v)) {
          throw Error(ErrorKind::kSingularMatrix, "homography has non-finite entries");
        }
        norm = std::max(norm, std::abs(v));
      }
    }
    if (std::abs(s) <= 1e-12 * std::max(norm, 1.0)) {
      throw Error(ErrorKind::kSingularMatrix, "cannot normalize homography: m[2][2] is zero");
    }
    for (auto& row : m_) {
      for (double& v : row) v /= s;
    }
    m_[2][2] = 1.0;
    if (std::abs(determinant()) <= 1e-12) {
      throw Error(ErrorKind::kSingularMatrix, "homography determinant below 1e-12");
    }
  }

  static Homography identity() { return Homography(); }

  static Homography from_row_major(std::span<const double, 9> v) {
    return Homography(Matrix{{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, {v[6], v[7], v[8]}}});
  }

  std::array<double, 9> row_major() const {
    return {m_[0][0], m_[0][1], m_[0][2], m_[1][0], m_[1][1],
            m_[1][2], m_[2][0], m_[2][1], m_[2][2]};
  }

  const Matrix& matrix() const { return m_; }
  double operator()(int r, int c) const { return m_[r][c]; }

  double determinant() const {
    return m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
           m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
           m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
  }

  friend bool operator==(const Homography&, const Homography&) = default;

 private:
  Matrix m_;
};

inline Point2 apply_homography(const Homography& h, const Point2& p) {
  const double w = h(2, 0) * p.x + h(2, 1) * p.y + h(2, 2);
  if (!(std::abs(w) > 1e-12)) {
    throw Error(ErrorKind::kPointAtInfinity, "homogeneous depth |w| <= 1e-12");
  }
  return {(h(0, 0) * p.x + h(0, 1) * p.y + h(0, 2)) / w,
          (h(1, 0) * p.x + h(1, 1) * p.y + h(1, 2)) / w};
}

inline Homography compose(const Homography& outer, const Homography& inner) {
  Homography::Matrix r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += outer(i, k) * inner(k, j);
      r[i][j] = acc;
    }
  }
  return Homography(r);
}

/// Adjugate inverse, renormalized to m[2][2] = 1.
inline Homography invert_homography(const Homography& h) {
  const double det = h.determinant();
  if (!(std::abs(det) > 1e-12)) {
    throw Error(ErrorKind::kSingularMatrix, "homography is not invertible");
  }
  const auto& m = h.matrix();
  Homography::Matrix inv{};
  inv[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  inv[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
  inv[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  inv[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
  inv[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
  inv[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
  inv[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  inv[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
  inv[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  // The adjugate is the inverse up to the factor 1/det, which the
  // normalization divides out anyway.
  return Homography(inv);
}

namespace detail {

// Solves a*x = b in place by Gaussian elimination with partial pivoting.
// Returns false when a pivot falls below `tol` (rank-deficient system).
template <std::size_t N>
bool solve_linear(std::array<std::array<double, N>, N>& a, std::array<double, N>& b,
                  double tol) {
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < N; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < tol) return false;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < N; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < N; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = N; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < N; ++c) acc -= a[i][c] * b[c];
    b[i] = acc / a[i][i];
  }
  return true;
}

// Similarity that moves the corner centroid to the origin and scales the
// mean corner distance to sqrt(2).
inline Homography::Matrix conditioning(const Quad& q) {
  double cx = 0.0, cy = 0.0;
  for (const auto& p : q.corners) {
    cx += p.x;
    cy += p.y;
  }
  cx /= 4.0;
  cy /= 4.0;
  double mean = 0.0;
  for (const auto& p : q.corners) mean += std::hypot(p.x - cx, p.y - cy);
  mean /= 4.0;
  const double s = mean > 0.0 ? std::sqrt(2.0) / mean : 1.0;
  return {{{s, 0, -s * cx}, {0, s, -s * cy}, {0, 0, 1}}};
}

}  // namespace detail

/// Homography mapping each src corner onto the matching dst corner, from the
/// 8-unknown linear system of the four correspondences (h22 fixed to 1).
/// Coordinates are conditioned first so large pixel values stay accurate.
inline Homography homography_from_quads(const Quad& src, const Quad& dst) {
  if (!is_strictly_convex(src) || !is_strictly_convex(dst)) {
    throw Error(ErrorKind::kDegenerateQuad, "quad is not strictly convex");
  }
  const Homography tsrc(detail::conditioning(src));
  const Homography tdst(detail::conditioning(dst));

  std::array<std::array<double, 8>, 8> a{};
  std::array<double, 8> b{};
  for (std::size_t k = 0; k < 4; ++k) {
    const Point2 s = apply_homography(tsrc, src.corners[k]);
    const Point2 d = apply_homography(tdst, dst.corners[k]);
    a[2 * k] = {s.x, s.y, 1.0, 0.0, 0.0, 0.0, -s.x * d.x, -s.y * d.x};
    b[2 * k] = d.x;
    a[2 * k + 1] = {0.0, 0.0, 0.0, s.x, s.y, 1.0, -s.x * d.y, -s.y * d.y};
    b[2 * k + 1] = d.y;
  }
  if (!detail::solve_linear(a, b, 1e-10)) {
    throw Error(ErrorKind::kDegenerateQuad, "corner correspondences are rank-deficient");
  }
  const Homography normalized(
      Homography::Matrix{{{b[0], b[1], b[2]}, {b[3], b[4], b[5]}, {b[6], b[7], 1.0}}});
  return compose(invert_homography(tdst), compose(normalized, tsrc));
}

/// Row-major grid of 8-bit class labels.
class LabelMask {
 public:
  LabelMask() = default;

  LabelMask(int width, int height, std::uint8_t fill = 0)
      : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
      throw Error(ErrorKind::kInvalidArgument, "mask dimensions must be positive");
    }
    labels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  LabelMask(int width, int height, std::vector<std::uint8_t> labels)
      : width_(width), height_(height), labels_(std::move(labels)) {
    if (width <= 0 || height <= 0) {
      throw Error(ErrorKind::kInvalidArgument, "mask dimensions must be positive");
    }
    if (labels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw Error(ErrorKind::kInvalidArgument, "label count does not match width*height");
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return labels_.empty(); }
  std::size_t size() const { return labels_.size(); }

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  std::uint8_t at(int x, int y) const { return labels_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return labels_[index(x, y)]; }

  std::span<const std::uint8_t> labels() const { return labels_; }
  std::span<std::uint8_t> labels() { return labels_; }

  /// Sorted distinct labels present.
  std::vector<std::uint8_t> label_set() const {
    std::array<bool, 256> seen{};
    for (std::uint8_t v : labels_) seen[v] = true;
    std::vector<std::uint8_t> out;
    for (int v = 0; v < 256; ++v) {
      if (seen[v]) out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
  }

  friend bool operator==(const LabelMask&, const LabelMask&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> labels_;
};

/// Nearest integer with ties going to the lower index, so an exact 2x
/// upscale produces clean 2x2 blocks.
inline double nearest_index(double v) { return std::ceil(v - 0.5); }

/// Pulls every output pixel center through h^-1 and copies the nearest source
/// label. Pixels that land outside the source, or at infinity, get `fill`.
inline LabelMask warp_mask(const LabelMask& src, const Homography& h, int out_w, int out_h,
                           std::uint8_t fill) {
  const Homography inv = invert_homography(h);
  LabelMask out(out_w, out_h, fill);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const double w = inv(2, 0) * x + inv(2, 1) * y + inv(2, 2);
      if (!(std::abs(w) > 1e-12)) continue;
      const Point2 p = apply_homography(inv, {static_cast<double>(x), static_cast<double>(y)});
      const double sx = nearest_index(p.x);
      const double sy = nearest_index(p.y);
      if (!(sx >= 0 && sy >= 0 && sx < src.width() && sy < src.height())) continue;
      out.at(x, y) = src.at(static_cast<int>(sx), static_cast<int>(sy));
    }
  }
  return out;
}

}  // namespace floorline

#endif  // FLOORLINE_GEOMETRY_HPP_
