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

#include "mfpt/metrics.hpp"

#include <cmath>

#include "mfpt/error.hpp"

namespace mfpt {

Matrix residual_matrix(const StochasticMatrix& p, const Matrix& m) {
  const auto n = static_cast<Eigen::Index>(p.size());
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "MFPT matrix does not match the chain size");
  }
  // Transposed copy so that row i of P is contiguous.
  const Matrix pt = p.matrix().transpose();
  Matrix eps(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double* mj = m.col(j).data();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double* pi = pt.col(i).data();
      double sum = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k != j) sum += pi[k] * mj[k];
      }
      eps(i, j) = m(i, j) - sum - 1.0;
    }
  }
  return eps;
}

double pze(const Matrix& epsilon) {
  if (epsilon.size() == 0) return 0.0;
  const auto zeros = (epsilon.array() == 0.0).count();
  return static_cast<double>(zeros) / static_cast<double>(epsilon.size());
}

double near_zero_fraction(const Matrix& epsilon, double threshold) {
  if (epsilon.size() == 0) return 0.0;
  const auto small = (epsilon.array().abs() <= threshold).count();
  return static_cast<double>(small) / static_cast<double>(epsilon.size());
}

double ore(const Matrix& epsilon) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < epsilon.rows(); ++i) {
    for (Eigen::Index j = 0; j < epsilon.cols(); ++j) {
      sum += std::abs(epsilon(i, j));
    }
  }
  return sum;
}

ResidualReport make_report(const StochasticMatrix& p, const MfptMatrix& m,
                           double wall_time_s) {
  ResidualReport r;
  r.epsilon = residual_matrix(p, m);
  r.pze = pze(r.epsilon);
  r.near_zero_frac = near_zero_fraction(r.epsilon);
  r.ore = ore(r.epsilon);
  r.wall_time_s = wall_time_s;
  r.solver_tag = to_string(m.solver);
  r.n = p.size();
  return r;
}

}  // namespace mfpt
