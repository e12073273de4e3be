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

// Height-attention layer (forward and exact reverse mode), the per-pixel
// softmax cross entropy, the fused two-branch loss, and height heatmaps.
//
// Forward composition for lower-level map L (C_l x H_l x W_l) and
// higher-level map M (C_h x H_h x W_h):
//   pooled[c][h]  = mean_w L[c][h][w]
//   conv[o][h]    = bias[o] + sum_{c,t} K[o][c][t] * pooled[c][h + t - k/2]
//   interp[o][h'] = linear resample of conv over height to H_h
//   A[o][h']      = sigmoid(interp[o][h'])
//   R[o][h'][w]   = A[o][h'] * M[o][h'][w]

#ifndef FLOORLINE_ATTENTION_HPP_
#define FLOORLINE_ATTENTION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "floorline/dataset_stats.hpp"
#include "floorline/errors.hpp"
#include "floorline/geometry.hpp"

namespace floorline {

/// C x H x W feature tensor, stored channel-major then row-major.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(int channels, int height, int width, double fill = 0.0)
      : channels_(channels), height_(height), width_(width) {
    if (channels <= 0 || height <= 0 || width <= 0) {
      throw Error(ErrorKind::kDimensionMismatch, "feature map dimensions must be positive");
    }
    values_.assign(static_cast<std::size_t>(channels) * height * width, fill);
  }

  int channels() const { return channels_; }
  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& at(int c, int h, int w) { return values_[index(c, h, w)]; }
  double at(int c, int h, int w) const { return values_[index(c, h, w)]; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool same_shape(const FeatureMap& o) const {
    return channels_ == o.channels_ && height_ == o.height_ && width_ == o.width_;
  }

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  std::size_t index(int c, int h, int w) const {
    return (static_cast<std::size_t>(c) * height_ + h) * width_ + w;
  }

  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<double> values_;
};

/// 1-D convolution over height: in_channels -> out_channels, odd kernel.
struct HaParams {
  int in_channels = 0;
  int out_channels = 0;
  int kernel_size = 3;
  std::vector<double> weights;  // out x in x kernel
  std::vector<double> bias;     // out

  HaParams() = default;
  HaParams(int in, int out, int k)
      : in_channels(in),
        out_channels(out),
        kernel_size(k),
        weights(static_cast<std::size_t>(in) * out * k, 0.0),
        bias(static_cast<std::size_t>(out), 0.0) {
    validate();
  }

  void validate() const {
    if (in_channels <= 0 || out_channels <= 0) {
      throw Error(ErrorKind::kDimensionMismatch, "channel counts must be positive");
    }
    if (kernel_size <= 0 || kernel_size % 2 == 0) {
      throw Error(ErrorKind::kDimensionMismatch, "kernel size must be odd");
    }
    if (weights.size() != static_cast<std::size_t>(in_channels) * out_channels * kernel_size ||
        bias.size() != static_cast<std::size_t>(out_channels)) {
      throw Error(ErrorKind::kDimensionMismatch, "parameter storage does not match shape");
    }
  }

  double& weight(int o, int c, int t) { return weights[widx(o, c, t)]; }
  double weight(int o, int c, int t) const { return weights[widx(o, c, t)]; }

 private:
  std::size_t widx(int o, int c, int t) const {
    return (static_cast<std::size_t>(o) * in_channels + c) * kernel_size + t;
  }
};

/// C_h x H_h gate values, each strictly inside (0, 1).
class AttentionMap {
 public:
  AttentionMap() = default;
  AttentionMap(int channels, int height, double fill = 0.0)
      : channels_(channels), height_(height),
        values_(static_cast<std::size_t>(channels) * height, fill) {}

  int channels() const { return channels_; }
  int height() const { return height_; }
  double& at(int c, int h) { return values_[static_cast<std::size_t>(c) * height_ + h]; }
  double at(int c, int h) const { return values_[static_cast<std::size_t>(c) * height_ + h]; }
  const std::vector<double>& values() const { return values_; }

 private:
  int channels_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

/// Linear resampling tap: out = (1 - frac) * in[lo] + frac * in[hi].
struct InterpTap {
  int lo = 0;
  int hi = 0;
  double frac = 0.0;
};

/// Half-pixel-aligned linear resampling from `in_h` to `out_h` rows, with
/// source positions clamped to the valid range. Identity when in_h == out_h.
inline std::vector<InterpTap> interpolation_taps(int in_h, int out_h) {
  std::vector<InterpTap> taps(static_cast<std::size_t>(out_h));
  const double scale = static_cast<double>(in_h) / out_h;
  for (int h = 0; h < out_h; ++h) {
    double src = (h + 0.5) * scale - 0.5;
    src = std::clamp(src, 0.0, static_cast<double>(in_h - 1));
    const int lo = static_cast<int>(std::floor(src));
    const int hi = std::min(lo + 1, in_h - 1);
    taps[static_cast<std::size_t>(h)] = {lo, hi, src - lo};
  }
  return taps;
}

inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// Everything ha_backward needs from the matching forward call.
struct HaCache {
  bool valid = false;
  FeatureMap lower;
  FeatureMap higher;
  HaParams params;
  std::vector<double> pooled;  // C_l x H_l
  AttentionMap attention;
  std::vector<InterpTap> taps;
};

struct HaForward {
  FeatureMap refined;
  AttentionMap attention;
  HaCache cache;
};

struct HaGradients {
  FeatureMap grad_lower;
  FeatureMap grad_higher;
  HaParams grad_params;
};

inline HaForward ha_forward(const FeatureMap& lower, const FeatureMap& higher,
                            const HaParams& params) {
  params.validate();
  if (lower.empty() || higher.empty()) {
    throw Error(ErrorKind::kDimensionMismatch, "feature maps must be non-empty");
  }
  if (lower.channels() != params.in_channels) {
    throw Error(ErrorKind::kDimensionMismatch,
                "lower map has " + std::to_string(lower.channels()) + " channels, params expect " +
                    std::to_string(params.in_channels));
  }
  if (higher.channels() != params.out_channels) {
    throw Error(ErrorKind::kDimensionMismatch,
                "higher map has " + std::to_string(higher.channels()) +
                    " channels, params produce " + std::to_string(params.out_channels));
  }
  const int cl = lower.channels(), hl = lower.height(), wl = lower.width();
  const int ch = higher.channels(), hh = higher.height(), wh = higher.width();
  const int k = params.kernel_size, half = k / 2;

  std::vector<double> pooled(static_cast<std::size_t>(cl) * hl, 0.0);
  for (int c = 0; c < cl; ++c) {
    for (int h = 0; h < hl; ++h) {
      double s = 0.0;
      for (int w = 0; w < wl; ++w) s += lower.at(c, h, w);
      pooled[static_cast<std::size_t>(c) * hl + h] = s / wl;
    }
  }

  std::vector<double> conv(static_cast<std::size_t>(ch) * hl, 0.0);
  for (int o = 0; o < ch; ++o) {
    for (int h = 0; h < hl; ++h) {
      double s = params.bias[static_cast<std::size_t>(o)];
      for (int c = 0; c < cl; ++c) {
        for (int t = 0; t < k; ++t) {
          const int src = h + t - half;
          if (src < 0 || src >= hl) continue;
          s += params.weight(o, c, t) * pooled[static_cast<std::size_t>(c) * hl + src];
        }
      }
      conv[static_cast<std::size_t>(o) * hl + h] = s;
    }
  }

  const auto taps = interpolation_taps(hl, hh);
  AttentionMap attention(ch, hh);
  for (int o = 0; o < ch; ++o) {
    const double* row = conv.data() + static_cast<std::size_t>(o) * hl;
    for (int h = 0; h < hh; ++h) {
      const auto& tap = taps[static_cast<std::size_t>(h)];
      const double z = (1.0 - tap.frac) * row[tap.lo] + tap.frac * row[tap.hi];
      attention.at(o, h) = sigmoid(z);
    }
  }

  FeatureMap refined(ch, hh, wh);
  for (int o = 0; o < ch; ++o) {
    for (int h = 0; h < hh; ++h) {
      const double a = attention.at(o, h);
      for (int w = 0; w < wh; ++w) refined.at(o, h, w) = a * higher.at(o, h, w);
    }
  }

  HaCache cache{true, lower, higher, params, std::move(pooled), attention, taps};
  return {std::move(refined), std::move(attention), std::move(cache)};
}

inline HaGradients ha_backward(const HaCache& cache, const FeatureMap& grad_refined) {
  if (!cache.valid) throw Error(ErrorKind::kStaleCache, "cache does not come from ha_forward");
  if (!grad_refined.same_shape(cache.higher)) {
    throw Error(ErrorKind::kStaleCache, "gradient shape does not match the cached forward pass");
  }
  const auto& p = cache.params;
  const int cl = cache.lower.channels(), hl = cache.lower.height(), wl = cache.lower.width();
  const int ch = cache.higher.channels(), hh = cache.higher.height(), wh = cache.higher.width();
  const int k = p.kernel_size, half = k / 2;

  HaGradients g{FeatureMap(cl, hl, wl), FeatureMap(ch, hh, wh),
                HaParams(p.in_channels, p.out_channels, p.kernel_size)};

  // through the gate: R = A * M
  std::vector<double> grad_conv(static_cast<std::size_t>(ch) * hl, 0.0);
  for (int o = 0; o < ch; ++o) {
    for (int h = 0; h < hh; ++h) {
      const double a = cache.attention.at(o, h);
      double ga = 0.0;
      for (int w = 0; w < wh; ++w) {
        g.grad_higher.at(o, h, w) = a * grad_refined.at(o, h, w);
        ga += grad_refined.at(o, h, w) * cache.higher.at(o, h, w);
      }
      const double gz = ga * a * (1.0 - a);
      const auto& tap = cache.taps[static_cast<std::size_t>(h)];
      grad_conv[static_cast<std::size_t>(o) * hl + tap.lo] += (1.0 - tap.frac) * gz;
      grad_conv[static_cast<std::size_t>(o) * hl + tap.hi] += tap.frac * gz;
    }
  }

  std::vector<double> grad_pooled(static_cast<std::size_t>(cl) * hl, 0.0);
  for (int o = 0; o < ch; ++o) {
    for (int h = 0; h < hl; ++h) {
      const double gc = grad_conv[static_cast<std::size_t>(o) * hl + h];
      g.grad_params.bias[static_cast<std::size_t>(o)] += gc;
      for (int c = 0; c < cl; ++c) {
        for (int t = 0; t < k; ++t) {
          const int src = h + t - half;
          if (src < 0 || src >= hl) continue;
          const std::size_t pi = static_cast<std::size_t>(c) * hl + src;
          g.grad_params.weight(o, c, t) += gc * cache.pooled[pi];
          grad_pooled[pi] += gc * p.weight(o, c, t);
        }
      }
    }
  }

  for (int c = 0; c < cl; ++c) {
    for (int h = 0; h < hl; ++h) {
      const double gp = grad_pooled[static_cast<std::size_t>(c) * hl + h] / wl;
      for (int w = 0; w < wl; ++w) g.grad_lower.at(c, h, w) = gp;
    }
  }
  return g;
}

struct LossResult {
  double loss = 0.0;
  FeatureMap grad_logits;
};

/// Mean over pixels of -log softmax(logits)[target], with its gradient.
inline LossResult softmax_cross_entropy(const FeatureMap& logits, const LabelMask& target) {
  if (logits.empty() || target.empty() || logits.height() != target.height() ||
      logits.width() != target.width()) {
    throw Error(ErrorKind::kDimensionMismatch, "logits and target differ in spatial size");
  }
  const int nc = logits.channels(), h = logits.height(), w = logits.width();
  const double n = static_cast<double>(h) * w;
  LossResult r{0.0, FeatureMap(nc, h, w)};
  std::vector<double> e(static_cast<std::size_t>(nc));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int t = target.at(x, y);
      if (t >= nc) {
        throw Error(ErrorKind::kLabelOutOfRange,
                    "label " + std::to_string(t) + " needs more than " + std::to_string(nc) +
                        " channels");
      }
      int arg = 0;
      for (int c = 1; c < nc; ++c) {
        if (logits.at(c, y, x) > logits.at(arg, y, x)) arg = c;
      }
      const double m = logits.at(arg, y, x);
      // log-sum-exp as m + log1p(sum of the non-max terms) keeps tiny losses exact.
      double rest = 0.0;
      for (int c = 0; c < nc; ++c) {
        e[static_cast<std::size_t>(c)] = std::exp(logits.at(c, y, x) - m);
        if (c != arg) rest += e[static_cast<std::size_t>(c)];
      }
      const double lse = m + std::log1p(rest);
      r.loss += lse - logits.at(t, y, x);
      const double denom = 1.0 + rest;
      for (int c = 0; c < nc; ++c) {
        const double prob = e[static_cast<std::size_t>(c)] / denom;
        r.grad_logits.at(c, y, x) = (prob - (c == t ? 1.0 : 0.0)) / n;
      }
    }
  }
  r.loss /= n;
  return r;
}

/// Per-pixel class probabilities.
inline FeatureMap softmax(const FeatureMap& logits) {
  FeatureMap out(logits.channels(), logits.height(), logits.width());
  for (int y = 0; y < logits.height(); ++y) {
    for (int x = 0; x < logits.width(); ++x) {
      double m = logits.at(0, y, x);
      for (int c = 1; c < logits.channels(); ++c) m = std::max(m, logits.at(c, y, x));
      double s = 0.0;
      for (int c = 0; c < logits.channels(); ++c) {
        out.at(c, y, x) = std::exp(logits.at(c, y, x) - m);
        s += out.at(c, y, x);
      }
      for (int c = 0; c < logits.channels(); ++c) out.at(c, y, x) /= s;
    }
  }
  return out;
}

/// Facade-branch loss plus floor-branch loss, unweighted.
inline double fused_loss(const FeatureMap& fa_logits, const LabelMask& fa_target,
                         const FeatureMap& fl_logits, const LabelMask& fl_target) {
  return softmax_cross_entropy(fa_logits, fa_target).loss +
         softmax_cross_entropy(fl_logits, fl_target).loss;
}

/// rows x n_bounds grid; column 0 is the lowest bound.
struct Heatmap {
  int rows = 0;
  int n_bounds = 0;
  std::vector<double> values;

  double at(int row, int bound) const {
    return values[static_cast<std::size_t>(row) * n_bounds + bound];
  }
  double& at(int row, int bound) { return values[static_cast<std::size_t>(row) * n_bounds + bound]; }
};

namespace detail {

inline void normalize_by_max(Heatmap& hm) {
  double mx = 0.0;
  for (double v : hm.values) mx = std::max(mx, v);
  if (mx > 0.0) {
    for (double& v : hm.values) v /= mx;
  }
}

}  // namespace detail

/// Row m-1 counts order-m pixels per vertical bound; normalized so the
/// largest cell is 1.
inline Heatmap height_heatmap(const LabelMask& mask, int n_bounds = 10) {
  if (n_bounds < 1) throw Error(ErrorKind::kInvalidArgument, "n_bounds must be >= 1");
  Heatmap hm{kMaxFloorOrder, n_bounds,
             std::vector<double>(static_cast<std::size_t>(kMaxFloorOrder) * n_bounds, 0.0)};
  for (int y = 0; y < mask.height(); ++y) {
    const int b = bound_of_row(y, mask.height(), n_bounds);
    for (int x = 0; x < mask.width(); ++x) {
      const int v = mask.at(x, y);
      if (v >= 1 && v <= kMaxFloorOrder) hm.at(v - 1, b) += 1.0;
    }
  }
  detail::normalize_by_max(hm);
  return hm;
}

/// Row m averages channel m's gate values over each vertical bound; normalized
/// so the largest cell is 1.
inline Heatmap height_heatmap(const AttentionMap& attention, int n_bounds = 10) {
  if (n_bounds < 1) throw Error(ErrorKind::kInvalidArgument, "n_bounds must be >= 1");
  Heatmap hm{attention.channels(), n_bounds,
             std::vector<double>(static_cast<std::size_t>(attention.channels()) * n_bounds, 0.0)};
  const auto rows = bound_row_counts(attention.height(), n_bounds);
  for (int c = 0; c < attention.channels(); ++c) {
    for (int h = 0; h < attention.height(); ++h) {
      hm.at(c, bound_of_row(h, attention.height(), n_bounds)) += attention.at(c, h);
    }
    for (int b = 0; b < n_bounds; ++b) {
      if (rows[static_cast<std::size_t>(b)] > 0) hm.at(c, b) /= rows[static_cast<std::size_t>(b)];
    }
  }
  detail::normalize_by_max(hm);
  return hm;
}

}  // namespace floorline

#endif  // FLOORLINE_ATTENTION_HPP_
