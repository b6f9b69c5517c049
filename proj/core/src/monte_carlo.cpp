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

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "mfpt/error.hpp"
#include "mfpt/generators.hpp"
#include "mfpt/solvers.hpp"
#include "parallel.hpp"

namespace mfpt {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t cell_seed(std::uint64_t seed, std::size_t i, std::size_t j) {
  return splitmix64(splitmix64(splitmix64(seed) ^ i) ^ j);
}

// Row-wise cumulative distribution with the last nonzero entry pinned to 1.
std::vector<std::vector<double>> cumulative_rows(const StochasticMatrix& p) {
  const std::size_t n = p.size();
  std::vector<std::vector<double>> cdf(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += p(i, j);
      cdf[i][j] = acc;
      if (p(i, j) > 0.0) last = j;
    }
    for (std::size_t j = last; j < n; ++j) cdf[i][j] = 1.0;
  }
  return cdf;
}

}  // namespace

MonteCarloEstimate estimate_mc(const StochasticMatrix& p,
                               const MonteCarloOptions& options) {
  const std::size_t n = p.size();
  const long horizon =
      options.horizon > 0 ? options.horizon : 1000 * static_cast<long>(n);
  if (options.trials < 1 || horizon < static_cast<long>(n)) {
    throw Error(ErrorCode::kParamOutOfRange,
                "Monte Carlo needs trials >= 1 and horizon >= n");
  }
  const auto cdf = cumulative_rows(p);
  const auto dim = static_cast<Eigen::Index>(n);

  MonteCarloEstimate est;
  est.mean.solver = SolverKind::kMonteCarlo;
  est.mean.iterations = options.trials;
  est.mean.values.resize(dim, dim);
  est.std_error.resize(dim, dim);
  est.samples.resize(dim, dim);
  std::vector<long> censored(n * n, 0);

  detail::parallel_for(n * n, options.threads, [&](std::size_t cell) {
    const std::size_t from = cell / n;
    const std::size_t to = cell % n;
    Rng rng(cell_seed(options.seed, from, to));

    long hits = 0;
    long lost = 0;
    // Welford accumulation keeps the variance stable for long trajectories.
    double mean = 0.0;
    double m2 = 0.0;
    for (long t = 0; t < options.trials; ++t) {
      std::size_t state = from;
      long steps = 0;
      do {
        const auto& row = cdf[state];
        const double u = uniform01(rng);
        state = static_cast<std::size_t>(
            std::upper_bound(row.begin(), row.end(), u) - row.begin());
        ++steps;
      } while (state != to && steps < horizon);
      if (state != to) {
        ++lost;
        continue;
      }
      ++hits;
      const double d = static_cast<double>(steps) - mean;
      mean += d / static_cast<double>(hits);
      m2 += d * (static_cast<double>(steps) - mean);
    }

    const auto r = static_cast<Eigen::Index>(from);
    const auto c = static_cast<Eigen::Index>(to);
    est.samples(r, c) = static_cast<int>(hits);
    censored[cell] = lost;
    if (hits == 0) {
      est.mean.values(r, c) = std::numeric_limits<double>::quiet_NaN();
      est.std_error(r, c) = std::numeric_limits<double>::quiet_NaN();
    } else {
      est.mean.values(r, c) = mean;
      const double var = hits > 1 ? m2 / static_cast<double>(hits - 1) : 0.0;
      est.std_error(r, c) = std::sqrt(var / static_cast<double>(hits));
    }
  });

  for (std::size_t cell = 0; cell < n * n; ++cell) {
    if (censored[cell] > 0) {
      est.censored.push_back({cell / n, cell % n, censored[cell]});
    }
  }
  if (!est.censored.empty()) {
    est.mean.warnings.push_back("CensoredCell: " +
                                std::to_string(est.censored.size()) +
                                " cells hit the horizon");
  }
  return est;
}

}  // namespace mfpt
