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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mfpt/generators.hpp"
#include "mfpt/solvers.hpp"

namespace mfpt::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitSolverFailure = 2,
};

inline constexpr const char* kCsvHeader =
    "n,matrix,algorithm,alpha,repeats,mean_time_s,pze,near_zero_frac,ore,"
    "iterations,warning";

struct RunConfig {
  std::vector<SolverKind> algorithms{SolverKind::kLeastSquares};
  int repeats = 20;
  double alpha = 0.5;
  double tol = 1e-10;
  long max_iter = 100000;
  std::optional<double> rank_tol;
  std::uint64_t seed = 1;
  long trials = 100000;
  long horizon = 0;
  unsigned threads = 0;
  bool timing_strict = false;
};

struct BenchRow {
  std::size_t n = 0;
  std::string matrix;
  SolverKind algorithm = SolverKind::kLeastSquares;
  std::optional<double> alpha;
  int repeats = 0;
  bool failed = false;
  double mean_time_s = 0.0;
  double pze = 0.0;
  double near_zero_frac = 0.0;
  double ore = 0.0;
  long iterations = 0;
  std::string warning;
};

struct CellResult {
  BenchRow row;
  std::optional<MfptMatrix> mfpt;  // empty when the solver failed
};

/// Runs one solver `config.repeats` times on `p` and summarizes the last run.
/// Solver errors become a failed row rather than an exception.
CellResult run_cell(const StochasticMatrix& p, const std::string& label,
                    SolverKind algorithm, const RunConfig& config);

std::string format_row(const BenchRow& row);

/// Thread cap from MFPT_THREADS (0 = sequential); hardware concurrency when
/// unset or unparsable.
unsigned threads_from_env();

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace mfpt::cli
