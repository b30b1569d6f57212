/*
 * Copyright 2026 The xorcim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "xorcim/error.hpp"

namespace xorcim {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid parameter";
    case ErrorCode::InfeasibleCalibration: return "infeasible calibration";
    case ErrorCode::OutOfBounds: return "out of bounds";
    case ErrorCode::AmbiguousReference: return "ambiguous reference";
    case ErrorCode::NoValidReference: return "no valid reference";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::Config: return "configuration error";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

}  // namespace xorcim
