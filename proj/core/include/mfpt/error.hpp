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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfpt {

enum class ErrorCode {
  kNotSquare,
  kTooSmall,
  kNegativeEntry,
  kEntryOutOfRange,
  kRowSumViolation,
  kDimensionMismatch,
  kIndexOutOfRange,
  kSingularSystem,
  kSingularPivot,
  kIncompatibleSystem,
  kNotErgodic,
  kAlphaOutOfRange,
  kMaxIterExceeded,
  kParamOutOfRange,
  kUnknownFixture,
  kGenerationFailed,
  kParseError,
  kIo,
};

const char* to_string(ErrorCode code);

// Base of every error thrown by the library. Callers that only need the
// category can switch on code(); the subclasses below carry the payload.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NegativeEntry : public Error {
 public:
  NegativeEntry(std::size_t row, std::size_t col, double value);
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_, col_;
};

class RowSumViolation : public Error {
 public:
  RowSumViolation(std::size_t row, double sum);
  std::size_t row() const noexcept { return row_; }
  double sum() const noexcept { return sum_; }

 private:
  std::size_t row_;
  double sum_;
};

class SingularPivot : public Error {
 public:
  SingularPivot(std::size_t step, double pivot);
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class IncompatibleSystem : public Error {
 public:
  explicit IncompatibleSystem(double residual_norm);
  double residual_norm() const noexcept { return residual_norm_; }

 private:
  double residual_norm_;
};

class MaxIterExceeded : public Error {
 public:
  MaxIterExceeded(long iterations, double delta);
  long iterations() const noexcept { return iterations_; }
  double delta() const noexcept { return delta_; }

 private:
  long iterations_;
  double delta_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mfpt
