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

// Geometry post-processing: turns a facade segmentation and a floor-order
// segmentation into per-facade floor-level line 5-tuples that share a common
// vanishing point and respect the bottom-to-top order of floors.
//
// Stages: group_facades -> group_lines -> polyfit_line -> refine_vp ->
// derive_endpoints -> enforce_order, composed by run_pipeline.

#ifndef FLOORLINE_POSTPROCESS_HPP_
#define FLOORLINE_POSTPROCESS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "floorline/errors.hpp"
#include "floorline/geometry.hpp"
#include "floorline/io.hpp"
#include "floorline/palette.hpp"
#include "floorline/parallel.hpp"

namespace floorline {

struct Pixel {
  int x = 0;
  int y = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
  friend auto operator<=>(const Pixel& a, const Pixel& b) {
    return a.y != b.y ? a.y <=> b.y : a.x <=> b.x;
  }
};

struct PostprocessConfig {
  int min_area = 50;
  double parallel_slope_eps = 1e-4;
  double convergence_tol = 1e-8;
  int max_iters = 5000;
  unsigned threads = 1;  // 0 = auto
};

/// One connected facade super-segment.
struct FacadeRegion {
  int id = 0;
  Orientation orientation = Orientation::kFront;
  std::vector<Pixel> pixels;  // raster order
  int x_min = 0;
  int x_max = 0;
  int y_min = 0;
  int y_max = 0;
};

struct LinePixelGroup {
  int facade_id = 0;
  int order = 1;
  std::vector<Pixel> pixels;  // raster order
};

/// y = intercept + slope * x
struct PolylineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rss = 0.0;
};

/// y = slope * (x - anchor.x) + anchor.y. Refined lines are anchored at the
/// vanishing point so they pass through it exactly.
struct LineModel {
  double slope = 0.0;
  Point2 anchor;

  double y(double x) const { return slope * (x - anchor.x) + anchor.y; }
};

struct VpSolution {
  std::optional<Point2> vp;  // nullopt: lines are parallel (vp at infinity)
  std::vector<LineModel> lines;
  double initial_loss = 0.0;
  double final_loss = 0.0;
  int iterations = 0;
  std::vector<double> loss_history;  // non-increasing, starts at initial_loss

  bool parallel() const { return !vp.has_value(); }
  std::vector<double> slopes() const {
    std::vector<double> s;
    for (const auto& l : lines) s.push_back(l.slope);
    return s;
  }
};

// ---------------------------------------------------------------------------
// Grouping

namespace detail {

class DisjointSet {
 public:
  int make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = parent_[static_cast<std::size_t>(v)];
      p = parent_[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
  }

 private:
  std::vector<int> parent_;
};

// Two-pass 8-connected labeling of the non-other pixels. Returns per-pixel
// provisional roots (-1 for background).
inline std::vector<int> label_foreground(const LabelMask& mask) {
  const int w = mask.width(), h = mask.height();
  std::vector<int> labels(mask.size(), -1);
  DisjointSet sets;
  const auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (mask.at(x, y) == facade_label::kOther) continue;
      int current = -1;
      // already-visited 8-neighbours: W, NW, N, NE
      constexpr std::array<std::pair<int, int>, 4> kPrev = {{{-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};
      for (const auto& [dx, dy] : kPrev) {
        const int nx = x + dx, ny = y + dy;
        if (!mask.in_bounds(nx, ny)) continue;
        const int l = labels[idx(nx, ny)];
        if (l < 0) continue;
        if (current < 0) {
          current = l;
        } else {
          sets.unite(current, l);
        }
      }
      if (current < 0) current = sets.make();
      labels[idx(x, y)] = current;
    }
  }
  for (int& l : labels) {
    if (l >= 0) l = sets.find(l);
  }
  return labels;
}

}  // namespace detail

/// Connected components (8-connectivity) over every non-other facade label.
/// Orientation is the majority orientation code inside the component (ties
/// resolve left, right, front; no orientation pixels at all means front).
/// Components below `min_area` pixels are dropped; ids follow raster order of
/// each component's first pixel.
inline std::vector<FacadeRegion> group_facades(const LabelMask& facade_mask, int min_area = 50) {
  const auto labels = detail::label_foreground(facade_mask);
  const int w = facade_mask.width();
  std::map<int, std::size_t> slot;  // root -> index into `regions`
  std::vector<FacadeRegion> regions;
  std::vector<std::array<long, 3>> votes;
  for (int y = 0; y < facade_mask.height(); ++y) {
    for (int x = 0; x < w; ++x) {
      const int root = labels[static_cast<std::size_t>(y) * w + x];
      if (root < 0) continue;
      auto [it, inserted] = slot.try_emplace(root, regions.size());
      if (inserted) {
        FacadeRegion r;
        r.x_min = r.x_max = x;
        r.y_min = r.y_max = y;
        regions.push_back(r);
        votes.push_back({0, 0, 0});
      }
      FacadeRegion& r = regions[it->second];
      r.pixels.push_back({x, y});
      r.x_min = std::min(r.x_min, x);
      r.x_max = std::max(r.x_max, x);
      r.y_min = std::min(r.y_min, y);
      r.y_max = std::max(r.y_max, y);
      if (const auto o = orientation_from_code(facade_mask.at(x, y))) {
        ++votes[it->second][static_cast<std::size_t>(*o)];
      }
    }
  }
  std::vector<FacadeRegion> out;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (static_cast<long>(regions[i].pixels.size()) < min_area) continue;
    const auto& v = votes[i];
    std::size_t best = static_cast<std::size_t>(Orientation::kFront);
    if (v[0] + v[1] + v[2] > 0) {
      best = 0;
      for (std::size_t k = 1; k < 3; ++k) {
        if (v[k] > v[best]) best = k;
      }
    }
    regions[i].orientation = static_cast<Orientation>(best);
    regions[i].id = static_cast<int>(out.size());
    out.push_back(std::move(regions[i]));
  }
  return out;
}

/// Buckets floor-order pixels by (containing facade, order). Pixels outside
/// every facade are discarded; same-order blobs within one facade merge.
/// Groups come out sorted by facade id, then order.
inline std::vector<LinePixelGroup> group_lines(const LabelMask& floor_mask,
                                               std::span<const FacadeRegion> facades) {
  const int w = floor_mask.width();
  std::vector<int> owner(floor_mask.size(), -1);
  for (std::size_t f = 0; f < facades.size(); ++f) {
    for (const auto& p : facades[f].pixels) {
      if (floor_mask.in_bounds(p.x, p.y)) {
        owner[static_cast<std::size_t>(p.y) * w + p.x] = static_cast<int>(f);
      }
    }
  }
  std::map<std::pair<std::size_t, int>, std::vector<Pixel>> buckets;
  for (int y = 0; y < floor_mask.height(); ++y) {
    for (int x = 0; x < w; ++x) {
      const int order = floor_mask.at(x, y);
      if (order < 1 || order > kMaxFloorOrder) continue;
      const int f = owner[static_cast<std::size_t>(y) * w + x];
      if (f < 0) continue;
      buckets[{static_cast<std::size_t>(f), order}].push_back({x, y});
    }
  }
  std::vector<LinePixelGroup> out;
  for (auto& [key, pixels] : buckets) {
    out.push_back({facades[key.first].id, key.second, std::move(pixels)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fitting

inline std::vector<Point2> to_points(std::span<const Pixel> pixels) {
  std::vector<Point2> pts;
  pts.reserve(pixels.size());
  for (const auto& p : pixels) pts.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
  return pts;
}

namespace detail {

// Centered normal equations; the caller guarantees a nonzero x-spread.
inline PolylineFit least_squares(std::span<const Point2> pts) {
  double mx = 0.0, my = 0.0;
  for (const auto& p : pts) {
    mx += p.x;
    my += p.y;
  }
  const double n = static_cast<double>(pts.size());
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
  }
  PolylineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& p : pts) {
    const double r = p.y - fit.intercept - fit.slope * p.x;
    fit.rss += r * r;
  }
  return fit;
}

}  // namespace detail

/// Least-squares y = b0 + b1 x. Needs at least 2 points spanning 2 px in x.
inline PolylineFit polyfit_line(std::span<const Point2> pts) {
  if (pts.empty()) throw Error(ErrorKind::kDegenerateSpread, "no pixels to fit");
  double lo = pts[0].x, hi = pts[0].x;
  for (const auto& p : pts) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  if (pts.size() < 2 || hi - lo < 2.0) {
    throw Error(ErrorKind::kDegenerateSpread,
                "x-spread " + std::to_string(hi - lo) + " px is below 2 px");
  }
  return detail::least_squares(pts);
}

inline PolylineFit polyfit_line(std::span<const Pixel> pixels) {
  const auto pts = to_points(pixels);
  return polyfit_line(std::span<const Point2>(pts));
}

struct VpOptions {
  double parallel_slope_eps = 1e-4;
  double convergence_tol = 1e-8;
  int max_iters = 5000;
};

namespace detail {

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Sum over lines of squared residuals of v - b_i (u - uc) - vc.
struct AnchoredLoss {
  const std::vector<std::vector<Point2>>& lines;

  double value(std::span<const double> slopes, double uc, double vc) const {
    double s = 0.0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (const auto& p : lines[i]) {
        const double r = p.y - slopes[i] * (p.x - uc) - vc;
        s += r * r;
      }
    }
    return s;
  }

  // Gradient (slopes..., uc, vc) and the Gauss-Newton diagonal used to scale it.
  void gradient(std::span<const double> slopes, double uc, double vc, std::vector<double>& g,
                std::vector<double>& diag) const {
    const std::size_t m = lines.size();
    g.assign(m + 2, 0.0);
    diag.assign(m + 2, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (const auto& p : lines[i]) {
        const double du = p.x - uc;
        const double r = p.y - slopes[i] * du - vc;
        g[i] -= 2.0 * r * du;
        g[m] += 2.0 * r * slopes[i];
        g[m + 1] -= 2.0 * r;
        diag[i] += 2.0 * du * du;
        diag[m] += 2.0 * slopes[i] * slopes[i];
        diag[m + 1] += 2.0;
      }
    }
  }
};

}  // namespace detail

/// Joint refinement of per-line slopes and a common vanishing point (xc, yc)
/// minimizing sum_i sum_j (y_ij - b_i (x_ij - xc) - yc)^2.
///
/// Slopes start from independent fits and the vp from the coordinate-wise
/// median of pairwise intersections. Coordinates are mapped into [0, 1] with
/// a uniform scale. Descent uses the gradient scaled by the Gauss-Newton
/// diagonal; a trial step is halved until the loss decreases, so the history
/// never increases. Stops when the relative loss change drops below
/// `convergence_tol` or after `max_iters` iterations. When every pair of
/// initial slopes differs by less than `parallel_slope_eps` the lines are
/// treated as parallel and returned unrefined with no vp.
inline VpSolution refine_vp_points(std::span<const std::vector<Point2>> samples,
                                   const VpOptions& opts = {}) {
  if (samples.size() < 2) {
    throw Error(ErrorKind::kTooFewLines, "vanishing point refinement needs at least 2 lines");
  }
  double ox = std::numeric_limits<double>::infinity(), oy = ox;
  double ex = -ox, ey = -ox;
  for (const auto& line : samples) {
    for (const auto& p : line) {
      ox = std::min(ox, p.x);
      oy = std::min(oy, p.y);
      ex = std::max(ex, p.x);
      ey = std::max(ey, p.y);
    }
  }
  const double scale = std::max({ex - ox, ey - oy, 1.0});
  std::vector<std::vector<Point2>> norm(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (const auto& p : samples[i]) norm[i].push_back({(p.x - ox) / scale, (p.y - oy) / scale});
  }

  std::vector<PolylineFit> fits;
  double fit_rss = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    polyfit_line(std::span<const Point2>(samples[i]));  // spread checked in pixels
    fits.push_back(detail::least_squares(norm[i]));
    fit_rss += fits.back().rss;
  }

  VpSolution sol;
  double max_gap = 0.0;
  std::vector<double> us, vs;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    for (std::size_t j = i + 1; j < fits.size(); ++j) {
      const double gap = std::abs(fits[i].slope - fits[j].slope);
      max_gap = std::max(max_gap, gap);
      if (gap < opts.parallel_slope_eps) continue;
      const double u = (fits[j].intercept - fits[i].intercept) / (fits[i].slope - fits[j].slope);
      us.push_back(u);
      vs.push_back(fits[i].intercept + fits[i].slope * u);
    }
  }
  const double to_px = scale * scale;
  if (max_gap < opts.parallel_slope_eps) {
    for (const auto& f : fits) sol.lines.push_back({f.slope, {ox, oy + scale * f.intercept}});
    sol.initial_loss = sol.final_loss = fit_rss * to_px;
    sol.loss_history = {sol.final_loss};
    return sol;
  }

  const std::size_t m = fits.size();
  std::vector<double> slopes(m);
  for (std::size_t i = 0; i < m; ++i) slopes[i] = fits[i].slope;
  double uc = detail::median(us), vc = detail::median(vs);

  const detail::AnchoredLoss loss{norm};
  double current = loss.value(slopes, uc, vc);
  sol.loss_history.push_back(current * to_px);
  // theta = (slopes..., uc, vc)
  const std::size_t n = m + 2;
  std::vector<double> theta(slopes);
  theta.push_back(uc);
  theta.push_back(vc);
  const auto eval = [&](const std::vector<double>& t) {
    return loss.value(std::span<const double>(t.data(), m), t[m], t[m + 1]);
  };
  std::vector<double> g, diag, z(n), d(n), trial(n), g_prev, z_prev;
  const auto gradient = [&] {
    loss.gradient(std::span<const double>(theta.data(), m), theta[m], theta[m + 1], g, diag);
    for (std::size_t k = 0; k < n; ++k) z[k] = g[k] / (diag[k] > 0.0 ? diag[k] : 1.0);
  };
  const auto dot = [](const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
    return s;
  };

  gradient();
  bool restart = true;
  double step = 1.0;
  int it = 0;
  for (; it < opts.max_iters && current > 0.0; ++it) {
    // Direction: diagonally preconditioned Polak-Ribiere conjugate gradient,
    // falling back to the scaled gradient on restarts.
    if (restart) {
      for (std::size_t k = 0; k < n; ++k) d[k] = -z[k];
    } else {
      double num = 0.0;
      for (std::size_t k = 0; k < n; ++k) num += z[k] * (g[k] - g_prev[k]);
      const double beta = std::max(0.0, num / dot(z_prev, g_prev));
      for (std::size_t k = 0; k < n; ++k) d[k] = -z[k] + beta * d[k];
      if (!(dot(g, d) < 0.0)) {
        for (std::size_t k = 0; k < n; ++k) d[k] = -z[k];
        restart = true;
      }
    }
    const double slope = dot(g, d);
    if (!(slope < 0.0)) break;

    // Armijo backtracking by halving, then one quadratic-interpolation probe.
    const auto at = [&](double t) {
      for (std::size_t k = 0; k < n; ++k) trial[k] = theta[k] + t * d[k];
      return eval(trial);
    };
    double t = restart ? 1.0 : std::min(1.0, 2.0 * step);
    double next = at(t);
    int halvings = 0;
    while (!(next <= current + 1e-4 * t * slope) && halvings < 60) {
      t *= 0.5;
      next = at(t);
      ++halvings;
    }
    if (!(next <= current + 1e-4 * t * slope)) {
      if (restart) break;
      restart = true;  // retry along the scaled gradient
      continue;
    }
    const double curvature = next - current - slope * t;
    if (curvature > 0.0) {
      const double t_quad = -slope * t * t / (2.0 * curvature);
      if (t_quad > 0.0 && t_quad <= 4.0 * t && t_quad != t) {
        const double probe = at(t_quad);
        if (probe < next) {
          next = probe;
          t = t_quad;
        }
      }
    }
    for (std::size_t k = 0; k < n; ++k) theta[k] += t * d[k];
    step = t;
    const double change = (current - next) / std::max(current, std::numeric_limits<double>::min());
    current = next;
    sol.loss_history.push_back(current * to_px);
    g_prev = g;
    z_prev = z;
    gradient();
    if (change < opts.convergence_tol) {
      if (restart) {
        ++it;
        break;
      }
      restart = true;  // confirm along the scaled gradient before stopping
    } else {
      restart = (it + 1) % n == 0;
    }
  }
  slopes.assign(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(m));
  uc = theta[m];
  vc = theta[m + 1];

  const Point2 vp{ox + scale * uc, oy + scale * vc};
  sol.vp = vp;
  for (double s : slopes) sol.lines.push_back({s, vp});
  sol.initial_loss = sol.loss_history.front();
  sol.final_loss = sol.loss_history.back();
  sol.iterations = it;
  return sol;
}

/// Groups must all belong to one facade.
inline VpSolution refine_vp(std::span<const LinePixelGroup> groups, const VpOptions& opts = {}) {
  if (groups.size() < 2) {
    throw Error(ErrorKind::kTooFewLines, "vanishing point refinement needs at least 2 lines");
  }
  std::vector<std::vector<Point2>> samples;
  for (const auto& g : groups) {
    if (g.facade_id != groups.front().facade_id) {
      throw Error(ErrorKind::kInvalidArgument, "line groups come from different facades");
    }
    samples.push_back(to_points(g.pixels));
  }
  return refine_vp_points(samples, opts);
}

// ---------------------------------------------------------------------------
// Endpoints and ordering

/// Evaluates the line over the facade's horizontal range, then trims the
/// segment along the line to the facade's vertical range.
inline Line5Tuple derive_endpoints(const FacadeRegion& facade, const LineModel& line, int order) {
  double lo = facade.x_min, hi = facade.x_max;
  if (line.slope == 0.0) {
    if (line.anchor.y < facade.y_min || line.anchor.y > facade.y_max) {
      throw Error(ErrorKind::kLineOutsideFacade, "horizontal line misses the facade's rows");
    }
  } else {
    const double xa = line.anchor.x + (facade.y_min - line.anchor.y) / line.slope;
    const double xb = line.anchor.x + (facade.y_max - line.anchor.y) / line.slope;
    lo = std::max(lo, std::min(xa, xb));
    hi = std::min(hi, std::max(xa, xb));
    if (!(lo <= hi)) {
      throw Error(ErrorKind::kLineOutsideFacade,
                  "line of order " + std::to_string(order) + " leaves the facade's vertical range");
    }
  }
  return {lo, line.y(lo), hi, line.y(hi), order};
}

inline Line5Tuple derive_endpoints(const FacadeRegion& facade, const PolylineFit& fit, int order) {
  return derive_endpoints(facade, LineModel{fit.slope, {0.0, fit.intercept}}, order);
}

namespace detail {

inline bool orders_consistent(std::span<const Line5Tuple> by_height) {
  for (std::size_t i = 1; i < by_height.size(); ++i) {
    if (!(by_height[i].order > by_height[i - 1].order &&
          by_height[i].mean_y() < by_height[i - 1].mean_y())) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Lines of one facade, returned bottom-most first. Orders that already
/// increase strictly from bottom to top are kept; otherwise lines are
/// relabeled 1, 2, ... by descending mean y (ties: lower incoming order first).
inline std::vector<Line5Tuple> enforce_order(std::vector<Line5Tuple> lines) {
  std::stable_sort(lines.begin(), lines.end(), [](const Line5Tuple& a, const Line5Tuple& b) {
    if (a.mean_y() != b.mean_y()) return a.mean_y() > b.mean_y();
    return a.order < b.order;
  });
  if (!detail::orders_consistent(lines)) {
    for (std::size_t i = 0; i < lines.size(); ++i) lines[i].order = static_cast<int>(i + 1);
  }
  return lines;
}

// ---------------------------------------------------------------------------
// Pipeline

struct FacadeResult {
  int id = 0;
  Orientation orientation = Orientation::kFront;
  std::optional<Point2> vp;
  std::vector<Line5Tuple> lines;
  std::optional<VpSolution> solution;
  std::vector<std::string> errors;
};

struct PipelineResult {
  std::vector<FacadeRegion> regions;
  std::vector<FacadeResult> facades;
};

namespace detail {

inline FacadeResult process_facade(const FacadeRegion& region,
                                   std::span<const LinePixelGroup> groups,
                                   const PostprocessConfig& config) {
  FacadeResult result;
  result.id = region.id;
  result.orientation = region.orientation;

  std::vector<const LinePixelGroup*> usable;
  std::vector<PolylineFit> fits;
  for (const auto& g : groups) {
    try {
      fits.push_back(polyfit_line(std::span<const Pixel>(g.pixels)));
      usable.push_back(&g);
    } catch (const Error& e) {
      result.errors.push_back("order " + std::to_string(g.order) + ": " + e.what());
    }
  }

  std::vector<LineModel> models;
  for (const auto& f : fits) models.push_back({f.slope, {0.0, f.intercept}});
  if (usable.size() >= 2) {
    std::vector<LinePixelGroup> picked;
    for (const auto* g : usable) picked.push_back(*g);
    try {
      VpSolution sol = refine_vp(picked, {config.parallel_slope_eps, config.convergence_tol,
                                          config.max_iters});
      models = sol.lines;
      result.vp = sol.vp;
      result.solution = std::move(sol);
    } catch (const Error& e) {
      result.errors.push_back(std::string("refinement: ") + e.what());
    }
  }

  std::vector<Line5Tuple> lines;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    try {
      lines.push_back(derive_endpoints(region, models[i], usable[i]->order));
    } catch (const Error& e) {
      result.errors.push_back(e.what());
    }
  }
  result.lines = enforce_order(std::move(lines));
  return result;
}

}  // namespace detail

/// Full post-processing of one image. A failure inside one facade is recorded
/// in that facade's `errors` and never affects the others.
inline PipelineResult run_pipeline(const LabelMask& facade_mask, const LabelMask& floor_mask,
                                   const PostprocessConfig& config = {}) {
  if (facade_mask.width() != floor_mask.width() || facade_mask.height() != floor_mask.height()) {
    throw Error(ErrorKind::kDimensionMismatch, "facade and floor masks differ in size");
  }
  PipelineResult out;
  out.regions = group_facades(facade_mask, config.min_area);
  const auto groups = group_lines(floor_mask, out.regions);
  out.facades.resize(out.regions.size());
  parallel_for(out.regions.size(), config.threads, [&](std::size_t f) {
    std::vector<LinePixelGroup> mine;
    for (const auto& g : groups) {
      if (g.facade_id == out.regions[f].id) mine.push_back(g);
    }
    out.facades[f] = detail::process_facade(out.regions[f], mine, config);
  });
  return out;
}

inline LineResults to_line_results(const PipelineResult& result, std::string image) {
  LineResults r;
  r.image = std::move(image);
  for (const auto& f : result.facades) {
    r.facades.push_back({f.id, f.orientation, f.vp, f.lines});
  }
  return r;
}

}  // namespace floorline

#endif  // FLOORLINE_POSTPROCESS_HPP_
