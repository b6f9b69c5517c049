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

#include <benchmark/benchmark.h>

#include "mfpt/mfpt.hpp"

namespace {

using namespace mfpt;

void BM_SolveLsRandomSparse(benchmark::State& state) {
  const StochasticMatrix p =
      random_sparse(static_cast<std::size_t>(state.range(0)), 0.4, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_ls(p).values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveLsRandomSparse)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_SolveLsRandomWalk(benchmark::State& state) {
  const StochasticMatrix p = random_walk(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_ls(p).values.data());
  }
}
BENCHMARK(BM_SolveLsRandomWalk)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SolveFundamental(benchmark::State& state) {
  const StochasticMatrix p =
      random_sparse(static_cast<std::size_t>(state.range(0)), 0.4, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_fundamental(p).values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveFundamental)->RangeMultiplier(2)->Range(8, 512)->Complexity();

void BM_SolveXuFixture(benchmark::State& state) {
  const StochasticMatrix p = fixture("P1");
  XuOptions opts;
  opts.alpha = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    const MfptMatrix m = solve_xu(p, opts);
    benchmark::DoNotOptimize(m.values.data());
    state.counters["iterations"] = static_cast<double>(m.iterations);
  }
}
BENCHMARK(BM_SolveXuFixture)->DenseRange(0, 8, 2);

void BM_MinNormSolveColumn(benchmark::State& state) {
  const StochasticMatrix p =
      random_sparse(static_cast<std::size_t>(state.range(0)), 0.4, 2);
  const ColumnSystem sys = build_column_system(p, 0);
  const Vector e = Vector::Ones(sys.a.rows());
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_norm_solve(sys.a, e).x.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MinNormSolveColumn)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oNCubed);

void BM_ResidualMatrix(benchmark::State& state) {
  const StochasticMatrix p =
      random_sparse(static_cast<std::size_t>(state.range(0)), 0.4, 3);
  const Matrix m = solve_fundamental(p).values;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ore(residual_matrix(p, m)));
  }
}
BENCHMARK(BM_ResidualMatrix)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
