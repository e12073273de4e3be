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

#ifndef FLOORLINE_PALETTE_HPP_
#define FLOORLINE_PALETTE_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "floorline/errors.hpp"
#include "floorline/geometry.hpp"

namespace floorline {

/// Facade semantics. Code 0 is reserved for "other".
namespace facade_label {
inline constexpr std::uint8_t kOther = 0;
inline constexpr std::uint8_t kWindow = 1;
inline constexpr std::uint8_t kDoor = 2;
inline constexpr std::uint8_t kShop = 3;
inline constexpr std::uint8_t kLeft = 4;
inline constexpr std::uint8_t kRight = 5;
inline constexpr std::uint8_t kFront = 6;
inline constexpr std::uint8_t kMax = kFront;
}  // namespace facade_label

/// Floor semantics: 0 is "other", k in 1..10 is floor order k.
namespace floor_label {
inline constexpr std::uint8_t kOther = 0;
inline constexpr std::uint8_t kMax = kMaxFloorOrder;
}  // namespace floor_label

enum class MaskRole { kFacade, kFloor };

constexpr std::uint8_t palette_max(MaskRole role) {
  return role == MaskRole::kFacade ? facade_label::kMax : floor_label::kMax;
}

constexpr std::uint8_t orientation_code(Orientation o) {
  switch (o) {
    case Orientation::kLeft: return facade_label::kLeft;
    case Orientation::kRight: return facade_label::kRight;
    case Orientation::kFront: return facade_label::kFront;
  }
  return facade_label::kFront;
}

constexpr std::optional<Orientation> orientation_from_code(std::uint8_t code) {
  switch (code) {
    case facade_label::kLeft: return Orientation::kLeft;
    case facade_label::kRight: return Orientation::kRight;
    case facade_label::kFront: return Orientation::kFront;
    default: return std::nullopt;
  }
}

/// Throws InvalidLabel naming every code outside the palette of `role`.
inline void validate_palette(const LabelMask& mask, MaskRole role) {
  const std::uint8_t max = palette_max(role);
  std::string bad;
  for (std::uint8_t v : mask.label_set()) {
    if (v > max) {
      if (!bad.empty()) bad += ", ";
      bad += std::to_string(v);
    }
  }
  if (!bad.empty()) {
    throw Error(ErrorKind::kInvalidLabel,
                std::string(role == MaskRole::kFacade ? "facade" : "floor") +
                    " mask contains codes outside its palette: " + bad);
  }
}

}  // namespace floorline

#endif  // FLOORLINE_PALETTE_HPP_
