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
#include <random>
#include <string>
#include <string_view>
#include <variant>

#include "mfpt/chain.hpp"

namespace mfpt {

// Generators draw from std::mt19937_64 (fixed by the standard) and map
// outputs to [0, 1) as (x >> 11) * 2^-53, so a seed gives the same matrix on
// every conforming platform.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct FixtureSpec {
  std::string name;
};
struct RandomSparseSpec {
  std::size_t n = 10;
  double a = 0.4;
  std::uint64_t seed = 1;
};
struct RandomWalkSpec {
  std::size_t n = 10;
};
struct TwoStateSpec {
  double a = 0.5;
  double b = 0.5;
};

using GeneratorSpec =
    std::variant<FixtureSpec, RandomSparseSpec, RandomWalkSpec, TwoStateSpec>;

/// Short label without commas, e.g. "P1" or "random_sparse(n=50;a=0.4;seed=7)".
std::string describe(const GeneratorSpec& spec);

StochasticMatrix generate(const GeneratorSpec& spec);

/// Published test matrices P1..P4 exactly as printed (rows of P1 and P2 sum
/// to 1 only to about 1e-6).
Matrix fixture_printed(std::string_view name);

/// fixture_printed() with each row divided by its own sum, then validated.
StochasticMatrix fixture(std::string_view name);

inline constexpr int kMaxResamples = 1000;

/// Uniform(0,1) matrix, entries above `a` and the diagonal zeroed, rows
/// normalized. The whole matrix is redrawn while a row is empty or the chain
/// is reducible; GenerationFailed after kMaxResamples attempts.
StochasticMatrix random_sparse(std::size_t n, double a, std::uint64_t seed);

/// Tridiagonal reflecting walk: 0.75 / 0.25 on the boundary rows and
/// (0.25, 0.5, 0.25) inside.
StochasticMatrix random_walk(std::size_t n);

/// [[1-a, a], [b, 1-b]] with 0 < a, b <= 1.
StochasticMatrix two_state(double a, double b);

/// Closed-form MFPTs of two_state(a, b).
Eigen::Matrix2d two_state_exact_mfpt(double a, double b);

}  // namespace mfpt
