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

// Central finite-difference verification of the attention layer and the
// cross-entropy loss on seeded random instances.

#ifndef FLOORLINE_GRADCHECK_HPP_
#define FLOORLINE_GRADCHECK_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "floorline/attention.hpp"

namespace floorline {

inline constexpr double kFiniteDifferenceStep = 1e-5;
inline constexpr double kGradientTolerance = 1e-5;

/// |analytic - numeric| / max(|analytic|, |numeric|, 1e-3). The floor keeps
/// entries that are analytically ~0 from dominating through roundoff.
inline double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) /
         std::max({std::abs(analytic), std::abs(numeric), 1e-3});
}

struct GradCheckResult {
  double ha_max_rel_error = 0.0;
  double ce_max_rel_error = 0.0;
  bool zero_params_gate_exact = false;

  double max_rel_error() const { return std::max(ha_max_rel_error, ce_max_rel_error); }
  bool passed() const { return zero_params_gate_exact && max_rel_error() < kGradientTolerance; }
};

namespace detail {

inline void fill_uniform(std::vector<double>& v, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  for (double& x : v) x = d(rng);
}

// Max relative error of `analytic` against central differences of `f` with
// respect to every entry of `values`.
inline double check_entries(std::vector<double>& values, const std::vector<double>& analytic,
                            const std::function<double()>& f) {
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double saved = values[i];
    values[i] = saved + kFiniteDifferenceStep;
    const double up = f();
    values[i] = saved - kFiniteDifferenceStep;
    const double down = f();
    values[i] = saved;
    worst = std::max(worst, relative_error(analytic[i], (up - down) / (2 * kFiniteDifferenceStep)));
  }
  return worst;
}

}  // namespace detail

/// One random attention instance plus one random cross-entropy instance.
inline GradCheckResult attention_gradient_check(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> small(2, 4);
  const int cl = small(rng), chh = small(rng), hl = small(rng) + 2, wl = small(rng);
  const int hh = std::uniform_int_distribution<int>(hl, 2 * hl)(rng), wh = small(rng);

  FeatureMap lower(cl, hl, wl), higher(chh, hh, wh), seed_grad(chh, hh, wh);
  HaParams params(cl, chh, 3);
  detail::fill_uniform(lower.values(), rng, -1.0, 1.0);
  detail::fill_uniform(higher.values(), rng, -1.0, 1.0);
  detail::fill_uniform(seed_grad.values(), rng, -1.0, 1.0);
  detail::fill_uniform(params.weights, rng, -1.0, 1.0);
  detail::fill_uniform(params.bias, rng, -0.5, 0.5);

  GradCheckResult result;
  {
    const HaParams zero(cl, chh, 3);
    const auto fwd = ha_forward(lower, higher, zero);
    result.zero_params_gate_exact =
        std::all_of(fwd.attention.values().begin(), fwd.attention.values().end(),
                    [](double a) { return a == 0.5; });
  }

  // Scalar objective: <seed_grad, refined>, whose gradient wrt refined is seed_grad.
  const auto objective = [&] {
    const auto fwd = ha_forward(lower, higher, params);
    double s = 0.0;
    for (std::size_t i = 0; i < fwd.refined.size(); ++i) {
      s += seed_grad.values()[i] * fwd.refined.values()[i];
    }
    return s;
  };
  const auto grads = ha_backward(ha_forward(lower, higher, params).cache, seed_grad);
  double worst = 0.0;
  worst = std::max(worst, detail::check_entries(lower.values(), grads.grad_lower.values(), objective));
  worst = std::max(worst, detail::check_entries(higher.values(), grads.grad_higher.values(), objective));
  worst = std::max(worst, detail::check_entries(params.weights, grads.grad_params.weights, objective));
  worst = std::max(worst, detail::check_entries(params.bias, grads.grad_params.bias, objective));
  result.ha_max_rel_error = worst;

  const int nc = small(rng) + 1, h = small(rng), w = small(rng);
  FeatureMap logits(nc, h, w);
  detail::fill_uniform(logits.values(), rng, -3.0, 3.0);
  LabelMask target(w, h);
  std::uniform_int_distribution<int> cls(0, nc - 1);
  for (auto& v : target.labels()) v = static_cast<std::uint8_t>(cls(rng));
  const auto ce = softmax_cross_entropy(logits, target);
  result.ce_max_rel_error = detail::check_entries(
      logits.values(), ce.grad_logits.values(),
      [&] { return softmax_cross_entropy(logits, target).loss; });
  return result;
}

}  // namespace floorline

#endif  // FLOORLINE_GRADCHECK_HPP_
