/*
 * Copyright 2026 The poda Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "poda/error.hpp"

namespace poda {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kDimension: return "DimensionError";
    case ErrorCode::kNonFiniteInput: return "NonFiniteInput";
    case ErrorCode::kNonFiniteOutput: return "NonFiniteOutput";
    case ErrorCode::kUnsupportedActivation: return "UnsupportedActivation";
    case ErrorCode::kOracle: return "OracleError";
    case ErrorCode::kEnumerationGuard: return "EnumerationGuard";
    case ErrorCode::kMissingCoalition: return "MissingCoalition";
    case ErrorCode::kInvalidAllocation: return "InvalidAllocation";
    case ErrorCode::kInvalidAlpha: return "InvalidAlpha";
    case ErrorCode::kEmptyFamilyList: return "EmptyFamilyList";
    case ErrorCode::kSingularFit: return "SingularFit";
    case ErrorCode::kNotPolynomial: return "NotPolynomial";
    case ErrorCode::kBackgroundNotSingleRow: return "BackgroundNotSingleRow";
    case ErrorCode::kDegenerateLabels: return "DegenerateLabels";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kConfig: return "ConfigError";
  }
  return "Error";
}

}  // namespace poda
