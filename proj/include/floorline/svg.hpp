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

// Static SVG overlay of recognized floor-level lines, colored by floor order
// (orange for order 1, green for order 2, then a fixed cycle).

#ifndef FLOORLINE_SVG_HPP_
#define FLOORLINE_SVG_HPP_

#include <array>
#include <cstdio>
#include <string>
#include <string_view>

#include "floorline/io.hpp"

namespace floorline {

inline std::string_view order_color(int order) {
  static constexpr std::array<std::string_view, 10> kColors = {
      "#ff8c00", "#2ca02c", "#1f77b4", "#d62728", "#9467bd",
      "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
  const int i = (order - 1) % static_cast<int>(kColors.size());
  return kColors[static_cast<std::size_t>(i < 0 ? 0 : i)];
}

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace detail

struct SvgOptions {
  double stroke_width = 3.0;
  bool draw_vp = true;
  std::string background_href;  // optional image drawn underneath
};

inline std::string render_svg(const LineResults& results, int width, int height,
                              const SvgOptions& opts = {}) {
  using detail::fmt;
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" width=\"" +
       std::to_string(width) + "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
       std::to_string(width) + " " + std::to_string(height) + "\">\n";
  if (!opts.background_href.empty()) {
    s += "  <image x=\"0\" y=\"0\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" xlink:href=\"" + opts.background_href + "\"/>\n";
  }
  for (const auto& f : results.facades) {
    s += "  <g id=\"facade-" + std::to_string(f.id) + "\" class=\"" +
         std::string(to_string(f.orientation)) + "\">\n";
    for (const auto& l : f.lines) {
      s += "    <line x1=\"" + fmt(l.xs) + "\" y1=\"" + fmt(l.ys) + "\" x2=\"" + fmt(l.xe) +
           "\" y2=\"" + fmt(l.ye) + "\" stroke=\"" + std::string(order_color(l.order)) +
           "\" stroke-width=\"" + fmt(opts.stroke_width) + "\" data-order=\"" +
           std::to_string(l.order) + "\"/>\n";
    }
    if (opts.draw_vp && f.vp && f.vp->x >= 0 && f.vp->x <= width && f.vp->y >= 0 &&
        f.vp->y <= height) {
      s += "    <circle cx=\"" + fmt(f.vp->x) + "\" cy=\"" + fmt(f.vp->y) +
           "\" r=\"4\" fill=\"none\" stroke=\"#ffffff\"/>\n";
    }
    s += "  </g>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace floorline

#endif  // FLOORLINE_SVG_HPP_
