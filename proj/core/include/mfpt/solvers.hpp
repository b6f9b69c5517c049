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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfpt/chain.hpp"
#include "mfpt/linsolve.hpp"

namespace mfpt {

enum class SolverKind { kLeastSquares, kXu, kFundamental, kMonteCarlo };

const char* to_string(SolverKind kind);  // "ls", "xu", "fundamental", "mc"
std::optional<SolverKind> parse_solver(const std::string& tag);

// QR pivot decay ratio above which a ConditionWarning is attached.
inline constexpr double kConditionWarningRatio = 1e12;

/// Mean first passage times: values(i, j) is the expected number of steps to
/// reach j for the first time starting from i (the diagonal holds mean
/// recurrence times).
struct MfptMatrix {
  Matrix values;
  SolverKind solver = SolverKind::kLeastSquares;
  long iterations = 0;
  std::optional<double> alpha;
  std::vector<std::string> warnings;
};

/// A_i = I - P_i, where P_i is P with column i zeroed. Column i of A_i is the
/// i-th unit vector; every other column matches I - P.
struct ColumnSystem {
  std::size_t index = 0;
  Matrix a;
};

ColumnSystem build_column_system(const StochasticMatrix& p, std::size_t i);

struct LsOptions {
  MinNormOptions min_norm;
  // Worker threads for the column solves; 0 or 1 runs sequentially.
  unsigned threads = 0;
};

/// Column j of M is the minimal-norm solution of A_j x = e. Columns are
/// independent; with threads > 1 they are solved concurrently into disjoint
/// output columns, giving results identical to the sequential run.
///
/// Throws Error(kNotErgodic) unless P is irreducible and aperiodic.
MfptMatrix solve_ls(const StochasticMatrix& p, const LsOptions& options = {});

struct XuOptions {
  double alpha = 0.5;
  double tol = 1e-10;
  long max_iter = 100000;
  // Starting iterate; defaults to the all-ones matrix.
  std::optional<Matrix> x0;
};

/// Parameterized iteration (I - alpha P) X_(k+1) = J + (1 - alpha) P X_k
/// - P diag(X_k), one LU factorization reused for every step. Stops when the
/// elementwise max change drops below tol.
///
/// Throws Error(kAlphaOutOfRange) for alpha outside [0, 1),
/// MaxIterExceeded, or Error(kNotErgodic).
MfptMatrix solve_xu(const StochasticMatrix& p, const XuOptions& options = {});

/// Kemeny-Snell route: Z = (I - P + e pi^T)^-1,
/// m_ij = (z_jj - z_ij) / pi_j off the diagonal and m_ii = 1 / pi_i.
MfptMatrix solve_fundamental(const StochasticMatrix& p);

struct CensoredCell {
  std::size_t from = 0;
  std::size_t to = 0;
  long count = 0;  // trajectories that hit the horizon
};

struct MonteCarloOptions {
  long trials = 100000;
  std::uint64_t seed = 1;
  // Step cap per trajectory; 0 means 1000 * n.
  long horizon = 0;
  unsigned threads = 0;
};

struct MonteCarloEstimate {
  MfptMatrix mean;  // NaN where every trajectory was censored
  Matrix std_error;
  Eigen::MatrixXi samples;  // non-censored trajectories per cell
  std::vector<CensoredCell> censored;
};

/// Simulates `trials` trajectories per (i, j) and averages first-passage step
/// counts. Cell (i, j) draws from its own mt19937_64 stream seeded from
/// (seed, i, j), so results do not depend on the thread count.
MonteCarloEstimate estimate_mc(const StochasticMatrix& p,
                               const MonteCarloOptions& options = {});

}  // namespace mfpt
