/*
 * Copyright 2026 The mfpt Authors.
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
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "mfpt/error.hpp"

#include <sstream>

namespace mfpt {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kTooSmall: return "TooSmall";
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kEntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::kRowSumViolation: return "RowSumViolation";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kSingularPivot: return "SingularPivot";
    case ErrorCode::kIncompatibleSystem: return "IncompatibleSystem";
    case ErrorCode::kNotErgodic: return "NotErgodic";
    case ErrorCode::kAlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::kMaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::kParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::kUnknownFixture: return "UnknownFixture";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code) {}

namespace {

template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  os.precision(17);
  (os << ... << args);
  return os.str();
}

}  // namespace

NegativeEntry::NegativeEntry(std::size_t row, std::size_t col, double value)
    : Error(ErrorCode::kNegativeEntry,
            cat("entry (", row, ",", col, ") = ", value)),
      row_(row),
      col_(col) {}

RowSumViolation::RowSumViolation(std::size_t row, double sum)
    : Error(ErrorCode::kRowSumViolation, cat("row ", row, " sums to ", sum)),
      row_(row),
      sum_(sum) {}

SingularPivot::SingularPivot(std::size_t step, double pivot)
    : Error(ErrorCode::kSingularPivot,
            cat("pivot ", step, " has magnitude ", pivot)),
      step_(step) {}

IncompatibleSystem::IncompatibleSystem(double residual_norm)
    : Error(ErrorCode::kIncompatibleSystem,
            cat("least-squares residual ", residual_norm)),
      residual_norm_(residual_norm) {}

MaxIterExceeded::MaxIterExceeded(long iterations, double delta)
    : Error(ErrorCode::kMaxIterExceeded,
            cat("no convergence after ", iterations,
                " iterations (delta = ", delta, ")")),
      iterations_(iterations),
      delta_(delta) {}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorCode::kParseError, cat("line ", line, ": ", message)),
      line_(line) {}

}  // namespace mfpt
