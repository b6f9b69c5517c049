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

#include "mfpt/solvers.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "mfpt/error.hpp"
#include "parallel.hpp"

namespace mfpt {
namespace {

void require_regular(const StochasticMatrix& p, const char* solver) {
  const ChainDiagnosis d = diagnose(p);
  if (!d.regular()) {
    throw Error(ErrorCode::kNotErgodic,
                std::string(solver) + " needs an irreducible aperiodic chain (" +
                    (d.irreducible ? "period " + std::to_string(d.period)
                                   : std::string("reducible")) +
                    ")");
  }
}

std::string condition_warning(double decay, std::size_t column) {
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "ConditionWarning: QR pivot decay %.3g in column %zu", decay,
                column);
  return buf;
}

}  // namespace

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::kLeastSquares: return "ls";
    case SolverKind::kXu: return "xu";
    case SolverKind::kFundamental: return "fundamental";
    case SolverKind::kMonteCarlo: return "mc";
  }
  return "?";
}

std::optional<SolverKind> parse_solver(const std::string& tag) {
  if (tag == "ls") return SolverKind::kLeastSquares;
  if (tag == "xu") return SolverKind::kXu;
  if (tag == "fundamental") return SolverKind::kFundamental;
  if (tag == "mc") return SolverKind::kMonteCarlo;
  return std::nullopt;
}

ColumnSystem build_column_system(const StochasticMatrix& p, std::size_t i) {
  if (i >= p.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "state " + std::to_string(i) + " of " + std::to_string(p.size()));
  }
  const auto n = static_cast<Eigen::Index>(p.size());
  const auto col = static_cast<Eigen::Index>(i);
  ColumnSystem sys{i, Matrix::Identity(n, n) - p.matrix()};
  sys.a.col(col).setZero();
  sys.a(col, col) = 1.0;
  return sys;
}

MfptMatrix solve_ls(const StochasticMatrix& p, const LsOptions& options) {
  require_regular(p, "solve_ls");
  const std::size_t n = p.size();
  const auto dim = static_cast<Eigen::Index>(n);
  const Matrix i_minus_p = Matrix::Identity(dim, dim) - p.matrix();
  const Vector ones = Vector::Ones(dim);

  MfptMatrix out;
  out.solver = SolverKind::kLeastSquares;
  out.values.resize(dim, dim);
  std::vector<double> decay(n, 1.0);

  detail::parallel_for(n, options.threads, [&](std::size_t j) {
    const auto col = static_cast<Eigen::Index>(j);
    Matrix a = i_minus_p;
    a.col(col).setZero();
    a(col, col) = 1.0;
    MinNormSolution s = min_norm_solve(a, ones, options.min_norm);
    out.values.col(col) = s.x;
    decay[j] = s.pivot_decay;
  });

  const auto worst = std::max_element(decay.begin(), decay.end());
  if (*worst > kConditionWarningRatio) {
    out.warnings.push_back(condition_warning(
        *worst, static_cast<std::size_t>(worst - decay.begin())));
  }
  return out;
}

MfptMatrix solve_xu(const StochasticMatrix& p, const XuOptions& options) {
  if (!(options.alpha >= 0.0 && options.alpha < 1.0)) {
    throw Error(ErrorCode::kAlphaOutOfRange,
                "alpha = " + std::to_string(options.alpha) + " not in [0, 1)");
  }
  if (!(options.tol > 0.0) || options.max_iter < 1) {
    throw Error(ErrorCode::kParamOutOfRange, "tol must be > 0, max_iter >= 1");
  }
  require_regular(p, "solve_xu");

  const auto n = static_cast<Eigen::Index>(p.size());
  const Matrix& pm = p.matrix();
  if (options.x0 && (options.x0->rows() != n || options.x0->cols() != n)) {
    throw Error(ErrorCode::kDimensionMismatch, "initial iterate has wrong shape");
  }

  const LuFactors f = lu_factorize(Matrix::Identity(n, n) - options.alpha * pm);
  const double damping = 1.0 - options.alpha;

  Matrix x = options.x0 ? *options.x0 : Matrix::Ones(n, n);
  Matrix y(n, n);
  double delta = 0.0;
  for (long k = 1; k <= options.max_iter; ++k) {
    // Y = J + (1 - alpha) P X - P X_d
    y.noalias() = damping * (pm * x);
    y -= pm * x.diagonal().asDiagonal();
    y.array() += 1.0;
    Matrix next = lu_solve(f, y);
    delta = (next - x).cwiseAbs().maxCoeff();
    x.swap(next);
    if (!std::isfinite(delta)) throw MaxIterExceeded(k, delta);
    if (delta < options.tol) {
      MfptMatrix out;
      out.values = std::move(x);
      out.solver = SolverKind::kXu;
      out.iterations = k;
      out.alpha = options.alpha;
      return out;
    }
  }
  throw MaxIterExceeded(options.max_iter, delta);
}

MfptMatrix solve_fundamental(const StochasticMatrix& p) {
  require_regular(p, "solve_fundamental");
  const auto n = static_cast<Eigen::Index>(p.size());
  const Vector pi = stationary_distribution(p).pi;

  Matrix z;
  try {
    const Matrix a = Matrix::Identity(n, n) - p.matrix() +
                     Vector::Ones(n) * pi.transpose();
    z = lu_solve(lu_factorize(a), Matrix::Identity(n, n));
  } catch (const SingularPivot& e) {
    throw Error(ErrorCode::kSingularSystem,
                std::string("fundamental matrix is singular (") + e.what() + ")");
  }

  MfptMatrix out;
  out.solver = SolverKind::kFundamental;
  out.values.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out.values(i, j) = i == j ? 1.0 / pi(j) : (z(j, j) - z(i, j)) / pi(j);
    }
  }
  return out;
}

}  // namespace mfpt
