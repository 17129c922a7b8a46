// Copyright 2026 The Dubins Escape Authors
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

#ifndef DUBINS_ESCAPE_ERROR_HPP_
#define DUBINS_ESCAPE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dubins_escape {

enum class ErrorCode {
  kInvalidArgument,
  kTooFewVertices,
  kDegenerateEdge,
  kNonConvex,
  kIndexOutOfRange,
  kOutsideHalfPlane,
  kRegionViolation,
  kOutsidePolygon,
  kNoCrossing,
  kInvalidGrid,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kTooFewVertices:
      return "too-few-vertices";
    case ErrorCode::kDegenerateEdge:
      return "degenerate-edge";
    case ErrorCode::kNonConvex:
      return "non-convex";
    case ErrorCode::kIndexOutOfRange:
      return "index-out-of-range";
    case ErrorCode::kOutsideHalfPlane:
      return "outside-half-plane";
    case ErrorCode::kRegionViolation:
      return "region-violation";
    case ErrorCode::kOutsidePolygon:
      return "outside-polygon";
    case ErrorCode::kNoCrossing:
      return "no-crossing";
    case ErrorCode::kInvalidGrid:
      return "invalid-grid";
  }
  return "unknown";
}

// Every failure raised by the library carries one of the codes above so that
// front ends can map it onto exit codes without parsing messages.
class EscapeError : public std::runtime_error {
 public:
  EscapeError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dubins_escape

#endif  // DUBINS_ESCAPE_ERROR_HPP_
