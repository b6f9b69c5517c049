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

#include <chrono>
#include <string>
#include <type_traits>
#include <utility>

#include "mfpt/chain.hpp"
#include "mfpt/solvers.hpp"

namespace mfpt {

inline constexpr double kNearZeroThreshold = 1e-12;

/// eps_ij = m_ij - sum_{k != j} p_ik m_kj - 1, summed in ascending k.
Matrix residual_matrix(const StochasticMatrix& p, const Matrix& m);
inline Matrix residual_matrix(const StochasticMatrix& p, const MfptMatrix& m) {
  return residual_matrix(p, m.values);
}

/// Fraction of entries that are exactly 0.0.
double pze(const Matrix& epsilon);

/// Fraction of entries with |eps| <= threshold.
double near_zero_fraction(const Matrix& epsilon,
                          double threshold = kNearZeroThreshold);

/// Sum of |eps_ij| in row-major order.
double ore(const Matrix& epsilon);

struct ResidualReport {
  Matrix epsilon;
  double pze = 0.0;
  double near_zero_frac = 0.0;
  double ore = 0.0;
  double wall_time_s = 0.0;
  std::string solver_tag;
  std::size_t n = 0;
};

ResidualReport make_report(const StochasticMatrix& p, const MfptMatrix& m,
                           double wall_time_s = 0.0);

template <typename R>
struct Timed {
  R result;
  double wall_time_s;
};

/// Runs f() and measures it with the steady clock.
template <typename F>
auto timed(F&& f) -> Timed<std::invoke_result_t<F>> {
  const auto start = std::chrono::steady_clock::now();
  auto result = std::forward<F>(f)();
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  return {std::move(result), elapsed.count()};
}

}  // namespace mfpt
