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
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace mfpt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kDefaultRowSumTol = 1e-12;

/// A row-stochastic transition matrix that has passed validation.
///
/// Entry (i, j) is the probability of moving from state i to state j in one
/// step. Instances are only produced by validate_stochastic() and are
/// immutable afterwards.
class StochasticMatrix {
 public:
  std::size_t size() const noexcept { return static_cast<std::size_t>(p_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return p_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Matrix& matrix() const noexcept { return p_; }

 private:
  explicit StochasticMatrix(Matrix p) : p_(std::move(p)) {}
  friend StochasticMatrix validate_stochastic(const Matrix&, double);

  Matrix p_;
};

struct ChainDiagnosis {
  bool irreducible = false;
  bool aperiodic = false;
  // gcd of cycle lengths through state 0; meaningful only when irreducible.
  std::size_t period = 1;

  bool regular() const noexcept { return irreducible && aperiodic; }
};

struct StationaryDistribution {
  Vector pi;
};

/// Checks that `raw` is square with n >= 2, entries in [0, 1] and every row
/// summing to one within `row_sum_tol`. Entries are copied unchanged.
///
/// Throws Error(kNotSquare / kTooSmall / kEntryOutOfRange), NegativeEntry or
/// RowSumViolation.
StochasticMatrix validate_stochastic(const Matrix& raw,
                                     double row_sum_tol = kDefaultRowSumTol);

/// Divides every row by its own sum. Rows summing to zero are left as-is so
/// that validation reports them.
Matrix renormalize_rows(const Matrix& raw);

/// Structural diagnosis on the support digraph (edge i->j iff p_ij > 0).
ChainDiagnosis diagnose(const StochasticMatrix& p);

/// Solves pi (I - P) = 0 with one equation replaced by sum(pi) = 1, using a
/// single dense LU factorization. Throws Error(kSingularSystem) when the
/// replaced system is numerically singular (reducible chain).
StationaryDistribution stationary_distribution(const StochasticMatrix& p);

// dense-txt: first line n, then n lines of n whitespace-separated numbers.
Matrix read_dense_txt(std::istream& in);
Matrix read_dense_txt_file(const std::string& path);
void write_dense_txt(std::ostream& out, const Matrix& m);
void write_dense_txt_file(const std::string& path, const Matrix& m);

}  // namespace mfpt
