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

// Flat JSON reports for the stats and evaluate commands.

#ifndef FLOORLINE_REPORTS_HPP_
#define FLOORLINE_REPORTS_HPP_

#include <string>

#include "floorline/dataset_stats.hpp"
#include "floorline/io.hpp"
#include "floorline/metrics.hpp"

namespace floorline {

inline Json to_json(const EntropyReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json p = Json::array();
    for (double v : r.p) p.push_back(v);
    rows.push_back(Json{{"given", r.given}, {"p", p}, {"entropy", r.entropy}});
  }
  return Json{{"log_base", 10}, {"rows", rows}, {"bound_average", report.bound_average}};
}

inline Json to_json(const VerticalBoundDistribution& d) {
  Json orders = Json::object();
  for (const auto& [order, ratios] : d.ratios) orders[std::to_string(order)] = ratios;
  return Json{{"n_bounds", d.n_bounds}, {"orders", orders}};
}

inline Json to_json(const ConfusionCounts& c) {
  return Json{{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"f1", c.f1()}};
}

inline Json to_json(const SplitCounts& c) {
  return Json{{"lower", to_json(c[FloorBand::kLower])},
              {"upper", to_json(c[FloorBand::kUpper])},
              {"overall", to_json(c[FloorBand::kOverall])}};
}

inline Json to_json(const EvalReport& r) {
  return Json{{"averaging", "micro"},
              {"images", r.images},
              {"pixel", to_json(r.pixel)},
              {"line", to_json(r.line)}};
}

}  // namespace floorline

#endif  // FLOORLINE_REPORTS_HPP_
