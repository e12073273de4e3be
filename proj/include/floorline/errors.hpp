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

#ifndef FLOORLINE_ERRORS_HPP_
#define FLOORLINE_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace floorline {

enum class ErrorKind {
  // geometry
  kDegenerateQuad,
  kPointAtInfinity,
  kSingularMatrix,
  // io
  kMalformedHeader,
  kTruncatedPayload,
  kMaxvalTooLarge,
  kMalformedPayload,
  kSchemaViolation,
  kIoFailure,
  kInvalidLabel,
  // augmentation
  kUnmappedLabel,
  kInvalidMapping,
  kInvalidFacade,
  // stats
  kProbabilityOutOfRange,
  kEmptyDataset,
  // attention
  kDimensionMismatch,
  kStaleCache,
  kLabelOutOfRange,
  // postprocess
  kDegenerateSpread,
  kTooFewLines,
  kLineOutsideFacade,
  // metrics
  kEmptyRaster,
  kInvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDegenerateQuad: return "DegenerateQuad";
    case ErrorKind::kPointAtInfinity: return "PointAtInfinity";
    case ErrorKind::kSingularMatrix: return "SingularMatrix";
    case ErrorKind::kMalformedHeader: return "MalformedHeader";
    case ErrorKind::kTruncatedPayload: return "TruncatedPayload";
    case ErrorKind::kMaxvalTooLarge: return "MaxvalTooLarge";
    case ErrorKind::kMalformedPayload: return "MalformedPayload";
    case ErrorKind::kSchemaViolation: return "SchemaViolation";
    case ErrorKind::kIoFailure: return "IoFailure";
    case ErrorKind::kInvalidLabel: return "InvalidLabel";
    case ErrorKind::kUnmappedLabel: return "UnmappedLabel";
    case ErrorKind::kInvalidMapping: return "InvalidMapping";
    case ErrorKind::kInvalidFacade: return "InvalidFacade";
    case ErrorKind::kProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorKind::kEmptyDataset: return "EmptyDataset";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kStaleCache: return "StaleCache";
    case ErrorKind::kLabelOutOfRange: return "LabelOutOfRange";
    case ErrorKind::kDegenerateSpread: return "DegenerateSpread";
    case ErrorKind::kTooFewLines: return "TooFewLines";
    case ErrorKind::kLineOutsideFacade: return "LineOutsideFacade";
    case ErrorKind::kEmptyRaster: return "EmptyRaster";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` identifies the failure class;
/// `what()` is "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// SchemaViolation carrying the JSON-pointer path of the offending field.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& detail)
      : Error(ErrorKind::kSchemaViolation,
              (pointer.empty() ? std::string("/") : pointer) + ": " + detail),
        pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace floorline

#endif  // FLOORLINE_ERRORS_HPP_
