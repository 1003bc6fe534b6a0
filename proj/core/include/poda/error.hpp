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

#ifndef PODA_ERROR_HPP_
#define PODA_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace poda {

enum class ErrorCode {
  kParse,
  kDimension,
  kNonFiniteInput,
  kNonFiniteOutput,
  kUnsupportedActivation,
  kOracle,
  kEnumerationGuard,
  kMissingCoalition,
  kInvalidAllocation,
  kInvalidAlpha,
  kEmptyFamilyList,
  kSingularFit,
  kNotPolynomial,
  kBackgroundNotSingleRow,
  kDegenerateLabels,
  kInsufficientSamples,
  kConfig,
};

std::string_view error_code_name(ErrorCode code);

// Base class of every error raised by the engine. The code lets front ends
// map failures onto exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define PODA_DEFINE_ERROR(Name, Code)                  \
  class Name : public Error {                          \
   public:                                             \
    explicit Name(const std::string& message)          \
        : Error(ErrorCode::Code, message) {}           \
  }

PODA_DEFINE_ERROR(ParseError, kParse);
PODA_DEFINE_ERROR(DimensionError, kDimension);
PODA_DEFINE_ERROR(NonFiniteInput, kNonFiniteInput);
PODA_DEFINE_ERROR(NonFiniteOutput, kNonFiniteOutput);
PODA_DEFINE_ERROR(UnsupportedActivation, kUnsupportedActivation);
PODA_DEFINE_ERROR(OracleError, kOracle);
PODA_DEFINE_ERROR(EnumerationGuard, kEnumerationGuard);
PODA_DEFINE_ERROR(MissingCoalition, kMissingCoalition);
PODA_DEFINE_ERROR(InvalidAllocation, kInvalidAllocation);
PODA_DEFINE_ERROR(InvalidAlpha, kInvalidAlpha);
PODA_DEFINE_ERROR(EmptyFamilyList, kEmptyFamilyList);
PODA_DEFINE_ERROR(SingularFit, kSingularFit);
PODA_DEFINE_ERROR(NotPolynomial, kNotPolynomial);
PODA_DEFINE_ERROR(BackgroundNotSingleRow, kBackgroundNotSingleRow);
PODA_DEFINE_ERROR(DegenerateLabels, kDegenerateLabels);
PODA_DEFINE_ERROR(InsufficientSamples, kInsufficientSamples);
PODA_DEFINE_ERROR(ConfigError, kConfig);

#undef PODA_DEFINE_ERROR

}  // namespace poda

#endif  // PODA_ERROR_HPP_
