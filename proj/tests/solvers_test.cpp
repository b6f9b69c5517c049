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
#include <vector>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "mfpt/error.hpp"
#include "mfpt/generators.hpp"
#include "mfpt/metrics.hpp"
#include "mfpt/solvers.hpp"
#include "oracles.hpp"

namespace mfpt {
namespace {

using testing::brute_force_mfpt;
using testing::max_abs_diff;

Matrix expected_two_state(double a, double b) {
  Matrix m(2, 2);
  m << (a + b) / b, 1.0 / a, 1.0 / b, (a + b) / a;
  return m;
}

// 50-digit solves of the vectorized system for the renormalized fixtures.
Matrix frozen_p1() {
  Matrix m(5, 5);
  m << 4.0334291646216242, 4.6017800818483287, 5.4481599359500425, 3.7846687399971016, 5.9915383656622955,
       3.7348322104738068, 6.1150698629033928, 6.0658724596225967, 3.4293320545150787, 4.9086409279959656,
       3.6216497674134547, 5.0425873043688617, 6.5903814863612046, 3.6704739861738208, 5.2701745377789012,
       3.0124582756548051, 5.2535873040947447, 6.8404574702278001, 3.5344640708575562, 6.0309522069369623,
       3.7023303920476048, 5.61695525834068, 5.0450600655575703, 3.428399188844111, 6.4986983859929168;
  return m;
}

Matrix frozen_p3() {
  Matrix m(5, 5);
  m << 5.1760817573090525, 2.0843554731782731, 3.8419219351062185, 3.0879010992792226, 4.867687277265023,
       4.2725039595937721, 4.2869211184107154, 4.0523684407167534, 2.0023077143525048, 4.202030815727167,
       3.9496988726181019, 3.6302371708774764, 6.2555724529262274, 2.2888597678331352, 3.0827056763331108,
       2.744925084251533, 3.0194555876398964, 5.430361952055538, 4.3073530364157957, 3.2949928590485266,
       3.3014996154420943, 1.9615611199530205, 4.9552846274089846, 3.503116911467053, 5.5091134515331954;
  return m;
}

TEST(BruteForceOracle, TwoStateClosedForm) {
  EXPECT_LE(max_abs_diff(brute_force_mfpt(two_state(0.25, 0.5).matrix()),
                         expected_two_state(0.25, 0.5)),
            1e-14);
  EXPECT_LE(max_abs_diff(brute_force_mfpt(fixture("P1").matrix()), frozen_p1()),
            1e-12);
}

TEST(BuildColumnSystem, SymmetricTwoState) {
  const ColumnSystem sys = build_column_system(two_state(0.5, 0.5), 0);
  Matrix expected(2, 2);
  expected << 1.0, -0.5, 0.0, 0.5;
  EXPECT_EQ(sys.a, expected);
  EXPECT_EQ(sys.index, 0u);
}

TEST(BuildColumnSystem, ColumnIsUnitVector) {
  const ColumnSystem sys = build_column_system(fixture("P1"), 2);
  EXPECT_EQ(sys.a.col(2), Vector::Unit(5, 2));
}

TEST(BuildColumnSystem, RestoresIMinusP) {
  for (const char* name : {"P1", "P2", "P3", "P4"}) {
    const StochasticMatrix p = fixture(name);
    const auto n = static_cast<Eigen::Index>(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      const ColumnSystem sys = build_column_system(p, i);
      // P'_i keeps only column i of P; A_i - P'_i must equal I - P.
      Matrix restored_part = Matrix::Zero(n, n);
      restored_part.col(static_cast<Eigen::Index>(i)) =
          p.matrix().col(static_cast<Eigen::Index>(i));
      EXPECT_EQ(sys.a - restored_part, Matrix::Identity(n, n) - p.matrix())
          << name << " column " << i;
    }
  }
}

TEST(BuildColumnSystem, IndexOutOfRange) {
  try {
    build_column_system(two_state(0.5, 0.5), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOutOfRange);
  }
}

TEST(SolveLs, TwoStateClosedForm) {
  const MfptMatrix m = solve_ls(two_state(0.25, 0.5));
  EXPECT_LE(max_abs_diff(m.values, expected_two_state(0.25, 0.5)), 1e-14);
  EXPECT_EQ(m.solver, SolverKind::kLeastSquares);
  EXPECT_EQ(m.iterations, 0);
  EXPECT_FALSE(m.alpha.has_value());

  const MfptMatrix sym = solve_ls(two_state(0.5, 0.5));
  EXPECT_LE(max_abs_diff(sym.values, Matrix::Constant(2, 2, 2.0)), 1e-15);
}

TEST(SolveLs, FrozenFixtures) {
  EXPECT_LE(max_abs_diff(solve_ls(fixture("P1")).values, frozen_p1()), 1e-12);
  EXPECT_LE(max_abs_diff(solve_ls(fixture("P3")).values, frozen_p3()), 1e-12);
}

TEST(SolveLs, P1ResidualMagnitude) {
  const StochasticMatrix p = fixture("P1");
  EXPECT_LE(ore(residual_matrix(p, solve_ls(p))), 1e-12);
}

TEST(SolveLs, RejectsPeriodicAndReducible) {
  for (const Matrix& raw : {Matrix{{0.0, 1.0}, {1.0, 0.0}},
                            Matrix{{1.0, 0.0}, {0.5, 0.5}}}) {
    try {
      solve_ls(validate_stochastic(raw));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNotErgodic);
    }
  }
}

TEST(SolveLs, TheoremIdentityPerColumn) {
  // (I - P) x_j = e - x_jj p_j for every column.
  for (const char* name : {"P1", "P2", "P3"}) {
    const StochasticMatrix p = fixture(name);
    const auto n = static_cast<Eigen::Index>(p.size());
    const Matrix m = solve_ls(p).values;
    const Matrix a = Matrix::Identity(n, n) - p.matrix();
    for (Eigen::Index j = 0; j < n; ++j) {
      const Vector lhs = a * m.col(j);
      const Vector rhs = Vector::Ones(n) - m(j, j) * p.matrix().col(j);
      EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10) << name << " col " << j;
    }
  }
}

TEST(SolveLs, ParallelMatchesSequentialBitwise) {
  const StochasticMatrix p = random_sparse(40, 0.4, 17);
  const MfptMatrix seq = solve_ls(p);
  for (unsigned threads : {2u, 3u, 8u}) {
    LsOptions opts;
    opts.threads = threads;
    EXPECT_EQ(solve_ls(p, opts).values, seq.values) << threads;
  }
}

TEST(SolveLs, SvdRouteAgrees) {
  LsOptions opts;
  opts.min_norm.method = MinNormMethod::kSvd;
  const StochasticMatrix p = fixture("P2");
  EXPECT_LE(max_abs_diff(solve_ls(p, opts).values, solve_ls(p).values), 1e-10);
}

TEST(SolveXu, TwoStateConverges) {
  XuOptions opts;
  opts.tol = 1e-12;
  opts.max_iter = 10000;
  const MfptMatrix m = solve_xu(two_state(0.25, 0.5), opts);
  EXPECT_LE(max_abs_diff(m.values, expected_two_state(0.25, 0.5)), 1e-10);
  EXPECT_EQ(m.solver, SolverKind::kXu);
  EXPECT_GT(m.iterations, 0);
  ASSERT_TRUE(m.alpha.has_value());
  EXPECT_EQ(*m.alpha, 0.5);
}

TEST(SolveXu, AlphaZeroFixedPointSolvesDefiningEquation) {
  XuOptions opts;
  opts.alpha = 0.0;
  opts.tol = 1e-12;
  const StochasticMatrix p = fixture("P2");
  const MfptMatrix m = solve_xu(p, opts);
  EXPECT_LE(ore(residual_matrix(p, m)), 1e-8);
}

TEST(SolveXu, AgreesWithLsOnP1) {
  XuOptions opts;
  opts.tol = 1e-12;
  const StochasticMatrix p = fixture("P1");
  EXPECT_LE(max_abs_diff(solve_xu(p, opts).values, solve_ls(p).values), 1e-8);
}

TEST(SolveXu, CustomStartingPoint) {
  XuOptions opts;
  opts.x0 = Matrix::Constant(5, 5, 10.0);
  opts.tol = 1e-12;
  const StochasticMatrix p = fixture("P3");
  EXPECT_LE(max_abs_diff(solve_xu(p, opts).values, frozen_p3()), 1e-9);

  opts.x0 = Matrix::Ones(3, 3);
  try {
    solve_xu(p, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(SolveXu, AlphaOutOfRange) {
  for (double alpha : {-0.1, 1.0, 1.5, std::nan("")}) {
    XuOptions opts;
    opts.alpha = alpha;
    try {
      solve_xu(fixture("P1"), opts);
      FAIL() << alpha;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kAlphaOutOfRange);
    }
  }
}

TEST(SolveXu, NearAbsorbingFixtureHitsIterationCap) {
  XuOptions opts;
  opts.max_iter = 2000;
  try {
    solve_xu(fixture("P4"), opts);
    FAIL() << "expected MaxIterExceeded";
  } catch (const MaxIterExceeded& e) {
    EXPECT_EQ(e.iterations(), 2000);
    EXPECT_GT(e.delta(), opts.tol);
  }
}

TEST(SolveFundamental, TwoStateClosedForm) {
  EXPECT_LE(max_abs_diff(solve_fundamental(two_state(0.25, 0.5)).values,
                         expected_two_state(0.25, 0.5)),
            1e-14);
  EXPECT_LE(max_abs_diff(solve_fundamental(two_state(0.5, 0.5)).values,
                         Matrix::Constant(2, 2, 2.0)),
            1e-14);
}

TEST(SolveFundamental, AgreesWithLs) {
  for (const char* name : {"P1", "P2", "P3"}) {
    const StochasticMatrix p = fixture(name);
    EXPECT_LE(max_abs_diff(solve_fundamental(p).values, solve_ls(p).values), 1e-8)
        << name;
  }
}

std::vector<StochasticMatrix> agreement_chains() {
  std::vector<StochasticMatrix> chains;
  for (const char* name : {"P1", "P2", "P3"}) chains.push_back(fixture(name));
  for (std::uint64_t seed = 1; chains.size() < 12; ++seed) {
    StochasticMatrix p = random_sparse(5 + seed * 7 % 96, 0.4, seed);
    if (diagnose(p).aperiodic) chains.push_back(std::move(p));
  }
  return chains;
}

// Spectral radius of the per-column error map of the Xu iteration,
// e <- (I - alpha P)^-1 P ((1 - alpha) I - u_j u_j^T) e, maximized over j.
double xu_contraction(const Matrix& p, double alpha) {
  const Eigen::Index n = p.rows();
  const Matrix b = (Matrix::Identity(n, n) - alpha * p).fullPivLu().solve(p);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Matrix map = (1.0 - alpha) * b;
    map.col(j) -= b.col(j);
    worst = std::max(worst, Eigen::EigenSolver<Matrix>(map, false)
                                .eigenvalues()
                                .cwiseAbs()
                                .maxCoeff());
  }
  return worst;
}

TEST(CrossSolver, PairwiseAgreementProperty) {
  for (const auto& p : agreement_chains()) {
    const Matrix ls = solve_ls(p).values;
    const double scale = 1e-6 * ls.cwiseAbs().maxCoeff();
    EXPECT_LE(max_abs_diff(solve_fundamental(p).values, ls), scale);
    for (double alpha : {0.0, 0.3, 0.5}) {
      XuOptions opts;
      opts.alpha = alpha;
      EXPECT_LE(max_abs_diff(solve_xu(p, opts).values, ls), scale)
          << "n=" << p.size() << " alpha=" << alpha;
    }
    EXPECT_GE(ls.minCoeff(), 1.0 - 1e-9);
  }
}

// The iteration converges exactly when its column error map is a
// contraction; alpha close to 1 can break that (P1 at alpha = 0.9).
TEST(CrossSolver, XuConvergesIffContractive) {
  int diverging = 0;
  for (const auto& p : agreement_chains()) {
    const Matrix ls = solve_ls(p).values;
    for (double alpha : {0.0, 0.3, 0.5, 0.7, 0.9}) {
      const double rho = xu_contraction(p.matrix(), alpha);
      if (std::abs(rho - 1.0) < 1e-2) continue;
      XuOptions opts;
      opts.alpha = alpha;
      if (rho < 1.0) {
        EXPECT_LE(max_abs_diff(solve_xu(p, opts).values, ls),
                  1e-6 * ls.cwiseAbs().maxCoeff())
            << "n=" << p.size() << " alpha=" << alpha << " rho=" << rho;
      } else {
        ++diverging;
        EXPECT_THROW(solve_xu(p, opts), MaxIterExceeded)
            << "n=" << p.size() << " alpha=" << alpha << " rho=" << rho;
      }
    }
  }
  EXPECT_GT(diverging, 0);
}

TEST(CrossSolver, XuAlphaPointNineOnFixtures) {
  XuOptions opts;
  opts.alpha = 0.9;
  EXPECT_GT(xu_contraction(fixture("P1").matrix(), 0.9), 1.5);
  EXPECT_THROW(solve_xu(fixture("P1"), opts), MaxIterExceeded);
  EXPECT_LT(xu_contraction(fixture("P3").matrix(), 0.9), 0.6);
  EXPECT_LE(max_abs_diff(solve_xu(fixture("P3"), opts).values, frozen_p3()), 1e-8);
}

TEST(EstimateMc, DeterministicCycle) {
  const StochasticMatrix p = validate_stochastic(Matrix{{0.0, 1.0}, {1.0, 0.0}});
  MonteCarloOptions opts;
  opts.trials = 50;
  const MonteCarloEstimate est = estimate_mc(p, opts);
  EXPECT_EQ(est.mean.values(0, 1), 1.0);
  EXPECT_EQ(est.mean.values(1, 0), 1.0);
  EXPECT_EQ(est.mean.values(0, 0), 2.0);
  EXPECT_EQ(est.std_error.maxCoeff(), 0.0);
  EXPECT_TRUE(est.censored.empty());
}

TEST(EstimateMc, SymmetricTwoStateWithinThreeSigma) {
  MonteCarloOptions opts;
  opts.trials = 100000;
  opts.seed = 3;
  const MonteCarloEstimate est = estimate_mc(two_state(0.5, 0.5), opts);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      EXPECT_LE(std::abs(est.mean.values(i, j) - 2.0), 3.0 * est.std_error(i, j));
      EXPECT_EQ(est.samples(i, j), opts.trials);
    }
  }
}

TEST(EstimateMc, ThreadCountDoesNotChangeResult) {
  MonteCarloOptions opts;
  opts.trials = 2000;
  opts.seed = 42;
  const StochasticMatrix p = fixture("P3");
  const MonteCarloEstimate a = estimate_mc(p, opts);
  opts.threads = 4;
  const MonteCarloEstimate b = estimate_mc(p, opts);
  EXPECT_EQ(a.mean.values, b.mean.values);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(EstimateMc, CensoredCellsAreFlagged) {
  // With a horizon of n steps almost every trajectory in P4 is cut off.
  MonteCarloOptions opts;
  opts.trials = 100;
  opts.horizon = 5;
  const MonteCarloEstimate est = estimate_mc(fixture("P4"), opts);
  EXPECT_FALSE(est.censored.empty());
  EXPECT_FALSE(est.mean.warnings.empty());
  for (const CensoredCell& c : est.censored) {
    const auto i = static_cast<Eigen::Index>(c.from);
    const auto j = static_cast<Eigen::Index>(c.to);
    EXPECT_EQ(c.count + est.samples(i, j), opts.trials);
    if (est.samples(i, j) == 0) EXPECT_TRUE(std::isnan(est.mean.values(i, j)));
  }
}

TEST(EstimateMc, RejectsBadParameters) {
  MonteCarloOptions opts;
  opts.trials = 0;
  EXPECT_THROW(estimate_mc(fixture("P1"), opts), Error);
  opts.trials = 10;
  opts.horizon = 2;
  EXPECT_THROW(estimate_mc(fixture("P1"), opts), Error);
}

TEST(SolverTags, RoundTrip) {
  for (SolverKind k : {SolverKind::kLeastSquares, SolverKind::kXu,
                       SolverKind::kFundamental, SolverKind::kMonteCarlo}) {
    EXPECT_EQ(parse_solver(to_string(k)), k);
  }
  EXPECT_FALSE(parse_solver("hp2").has_value());
}

}  // namespace
}  // namespace mfpt
