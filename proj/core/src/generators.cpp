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

#include "mfpt/generators.hpp"

#include <array>
#include <sstream>

#include "mfpt/error.hpp"

namespace mfpt {
namespace {

constexpr std::array<double, 25> kP1 = {
    0.136267, 0.292549, 0.266992, 0.220856, 0.083335,
    0.198798, 0.019347, 0.129998, 0.321252, 0.330605,
    0.246269, 0.215116, 0.044021, 0.249831, 0.244763,
    0.400950, 0.149352, 0.012546, 0.303336, 0.133815,
    0.200328, 0.084084, 0.351278, 0.337325, 0.026985,
};

constexpr std::array<double, 36> kP2 = {
    0.268031, 0.255740, 0.201497, 0.265012, 0.007385, 0.002335,
    0.166582, 0.137728, 0.032748, 0.118446, 0.187835, 0.356660,
    0.093279, 0.226108, 0.081331, 0.206803, 0.094199, 0.298281,
    0.103853, 0.230590, 0.261709, 0.069110, 0.061473, 0.273265,
    0.101657, 0.261742, 0.128131, 0.002138, 0.204864, 0.301467,
    0.216100, 0.210158, 0.154059, 0.178624, 0.213131, 0.027928,
};

constexpr std::array<double, 25> kP3 = {
    0.000000, 0.701299, 0.298701, 0.000000, 0.000000,
    0.000000, 0.000000, 0.437907, 0.562093, 0.000000,
    0.000000, 0.000000, 0.000000, 0.632082, 0.367918,
    0.471475, 0.000000, 0.000000, 0.000000, 0.528525,
    0.461323, 0.538677, 0.000000, 0.000000, 0.000000,
};

constexpr std::array<double, 25> kP4 = {
    0.999999, 1e-7,   2e-7,     3e-7,     4e-7,
    0.4,      0.3,    0,        0,        0.3,
    5e-7,     0,      0.999999, 0,        5e-7,
    5e-7,     0,      0,        0.999999, 5e-7,
    2e-7,     3e-7,   1e-7,     4e-7,     0.999999,
};

template <std::size_t N>
Matrix from_rows(const std::array<double, N>& data, Eigen::Index n) {
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = data[i * n + j];
  }
  return m;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kParamOutOfRange, what);
}

}  // namespace

std::string describe(const GeneratorSpec& spec) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixtureSpec>) {
          os << s.name;
        } else if constexpr (std::is_same_v<T, RandomSparseSpec>) {
          os << "random_sparse(n=" << s.n << ";a=" << s.a << ";seed=" << s.seed
             << ")";
        } else if constexpr (std::is_same_v<T, RandomWalkSpec>) {
          os << "random_walk(n=" << s.n << ")";
        } else {
          os << "two_state(a=" << s.a << ";b=" << s.b << ")";
        }
      },
      spec);
  return os.str();
}

StochasticMatrix generate(const GeneratorSpec& spec) {
  return std::visit(
      [](const auto& s) -> StochasticMatrix {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FixtureSpec>) {
          return fixture(s.name);
        } else if constexpr (std::is_same_v<T, RandomSparseSpec>) {
          return random_sparse(s.n, s.a, s.seed);
        } else if constexpr (std::is_same_v<T, RandomWalkSpec>) {
          return random_walk(s.n);
        } else {
          return two_state(s.a, s.b);
        }
      },
      spec);
}

Matrix fixture_printed(std::string_view name) {
  if (name == "P1") return from_rows(kP1, 5);
  if (name == "P2") return from_rows(kP2, 6);
  if (name == "P3") return from_rows(kP3, 5);
  if (name == "P4") return from_rows(kP4, 5);
  throw Error(ErrorCode::kUnknownFixture,
              "no fixture named '" + std::string(name) + "' (expected P1..P4)");
}

StochasticMatrix fixture(std::string_view name) {
  return validate_stochastic(renormalize_rows(fixture_printed(name)));
}

StochasticMatrix random_sparse(std::size_t n, double a, std::uint64_t seed) {
  require(n >= 2, "random_sparse needs n >= 2");
  require(a > 0.0 && a < 1.0, "random_sparse needs 0 < a < 1");
  const auto dim = static_cast<Eigen::Index>(n);
  Rng rng(seed);
  Matrix p(dim, dim);
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const double u = uniform01(rng);
        p(i, j) = (u > a || i == j) ? 0.0 : u;
      }
    }
    bool empty_row = false;
    for (Eigen::Index i = 0; i < dim && !empty_row; ++i) {
      const double sum = p.row(i).sum();
      if (sum == 0.0) {
        empty_row = true;
      } else {
        p.row(i) /= sum;
      }
    }
    if (empty_row) continue;
    StochasticMatrix out = validate_stochastic(p);
    if (diagnose(out).irreducible) return out;
  }
  throw Error(ErrorCode::kGenerationFailed,
              "no irreducible matrix after " + std::to_string(kMaxResamples) +
                  " attempts");
}

StochasticMatrix random_walk(std::size_t n) {
  require(n >= 2, "random_walk needs n >= 2");
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix p = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i > 0) p(i, i - 1) = 0.25;
    if (i + 1 < dim) p(i, i + 1) = 0.25;
    p(i, i) = (i == 0 || i + 1 == dim) ? 0.75 : 0.5;
  }
  return validate_stochastic(p);
}

StochasticMatrix two_state(double a, double b) {
  require(a > 0.0 && a <= 1.0 && b > 0.0 && b <= 1.0,
          "two_state needs 0 < a, b <= 1");
  Matrix p(2, 2);
  p << 1.0 - a, a, b, 1.0 - b;
  return validate_stochastic(p);
}

Eigen::Matrix2d two_state_exact_mfpt(double a, double b) {
  require(a > 0.0 && a <= 1.0 && b > 0.0 && b <= 1.0,
          "two_state needs 0 < a, b <= 1");
  Eigen::Matrix2d m;
  m << (a + b) / b, 1.0 / a, 1.0 / b, (a + b) / a;
  return m;
}

}  // namespace mfpt
