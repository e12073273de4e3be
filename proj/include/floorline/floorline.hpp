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

// Umbrella header.

#ifndef FLOORLINE_FLOORLINE_HPP_
#define FLOORLINE_FLOORLINE_HPP_

#include "floorline/attention.hpp"
#include "floorline/augmentation.hpp"
#include "floorline/dataset_stats.hpp"
#include "floorline/errors.hpp"
#include "floorline/geometry.hpp"
#include "floorline/gradcheck.hpp"
#include "floorline/io.hpp"
#include "floorline/metrics.hpp"
#include "floorline/palette.hpp"
#include "floorline/parallel.hpp"
#include "floorline/postprocess.hpp"
#include "floorline/reports.hpp"
#include "floorline/svg.hpp"

#endif  // FLOORLINE_FLOORLINE_HPP_
