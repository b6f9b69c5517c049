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
#include <optional>

#include "mfpt/chain.hpp"

namespace mfpt {

enum class MinNormMethod {
  kCompleteOrthogonal,  // column-pivoted QR followed by an RZ factorization
  kSvd,                 // debugging alternative
};

struct MinNormOptions {
  // Absolute threshold on |R_kk|. Unset means n * eps * ||A||_inf.
  std::optional<double> rank_tol;
  MinNormMethod method = MinNormMethod::kCompleteOrthogonal;
  // Throw IncompatibleSystem when ||Ax - b|| exceeds 1e-6 * max(1, ||b||).
  bool require_compatible = true;
};

struct MinNormSolution {
  Vector x;
  std::size_t rank = 0;
  double residual_norm = 0.0;
  // |R_00| / |R_(rank-1)(rank-1)| from the pivoted QR, or
  // sigma_max / sigma_rank on the SVD route.
  double pivot_decay = 1.0;
};

/// Minimal-norm least-squares solution x = A^+ b.
MinNormSolution min_norm_solve(const Matrix& a, const Vector& b,
                               const MinNormOptions& options = {});

/// Partial-pivoted LU, stored packed: strict lower part of `lu` is L (unit
/// diagonal implied), upper part is U. Row k of the factored matrix is row
/// perm[k] of the original.
struct LuFactors {
  Matrix lu;
  Eigen::VectorXi perm;

  Matrix lower() const;
  Matrix upper() const;
  // Permutation matrix Pm with Pm * A = L * U.
  Matrix permutation() const;
};

/// Throws SingularPivot(k) when a pivot magnitude falls below
/// 1e-14 * ||A||_inf.
LuFactors lu_factorize(const Matrix& a);

/// Solves A X = B for the matrix A that produced `f`.
Matrix lu_solve(const LuFactors& f, const Matrix& b);

}  // namespace mfpt
