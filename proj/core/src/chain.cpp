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

#include "mfpt/chain.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <vector>

#include "mfpt/error.hpp"
#include "mfpt/linsolve.hpp"

namespace mfpt {
namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

// Breadth-first levels from `root`; unreached states keep -1.
std::vector<long> bfs_levels(const Adjacency& adj, std::size_t root) {
  std::vector<long> level(adj.size(), -1);
  std::queue<std::size_t> frontier;
  level[root] = 0;
  frontier.push(root);
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : adj[u]) {
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        frontier.push(v);
      }
    }
  }
  return level;
}

}  // namespace

StochasticMatrix validate_stochastic(const Matrix& raw, double row_sum_tol) {
  if (raw.rows() != raw.cols()) {
    throw Error(ErrorCode::kNotSquare, "transition matrix is " +
                                           std::to_string(raw.rows()) + "x" +
                                           std::to_string(raw.cols()));
  }
  if (raw.rows() < 2) {
    throw Error(ErrorCode::kTooSmall, "a chain needs at least two states");
  }
  const auto n = static_cast<std::size_t>(raw.rows());
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (!std::isfinite(v) || v > 1.0) {
        throw Error(ErrorCode::kEntryOutOfRange,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") is not in [0, 1]");
      }
      if (v < 0.0) throw NegativeEntry(i, j, v);
      sum += v;
    }
    if (std::abs(sum - 1.0) > row_sum_tol) throw RowSumViolation(i, sum);
  }
  return StochasticMatrix(raw);
}

Matrix renormalize_rows(const Matrix& raw) {
  Matrix out = raw;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double sum = out.row(i).sum();
    if (sum != 0.0) out.row(i) /= sum;
  }
  return out;
}

ChainDiagnosis diagnose(const StochasticMatrix& p) {
  const std::size_t n = p.size();
  Adjacency fwd(n), bwd(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (p(i, j) > 0.0) {
        fwd[i].push_back(j);
        bwd[j].push_back(i);
      }
    }
  }

  ChainDiagnosis d;
  const auto down = bfs_levels(fwd, 0);
  const auto up = bfs_levels(bwd, 0);
  d.irreducible = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (down[i] < 0 || up[i] < 0) {
      d.irreducible = false;
      break;
    }
  }
  if (!d.irreducible) {
    d.period = 1;
    d.aperiodic = false;
    return d;
  }

  // Every edge u->v closes walks of length level(u) + 1 - level(v) through
  // the root, so the period is the gcd of those differences.
  long g = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v : fwd[u]) {
      g = std::gcd(g, std::abs(down[u] + 1 - down[v]));
    }
  }
  d.period = static_cast<std::size_t>(g);
  d.aperiodic = d.period == 1;
  return d;
}

StationaryDistribution stationary_distribution(const StochasticMatrix& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Matrix a = Matrix::Identity(n, n) - p.matrix().transpose();
  a.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;

  LuFactors f;
  try {
    f = lu_factorize(a);
  } catch (const SingularPivot& e) {
    throw Error(ErrorCode::kSingularSystem,
                std::string("stationary system is singular (") + e.what() + ")");
  }
  StationaryDistribution out;
  out.pi = lu_solve(f, rhs).col(0);
  return out;
}

}  // namespace mfpt
