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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "mfpt/error.hpp"
#include "mfpt/metrics.hpp"

namespace mfpt::cli {
namespace {

std::string no_commas(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

// Matrix source flags shared by solve, bench and gen.
struct SourceFlags {
  std::string fixture;
  std::string matrix_path;
  std::optional<std::size_t> random_sparse;
  std::optional<std::size_t> random_walk;
  std::vector<double> two_state;
  double a = 0.4;
  std::uint64_t seed = 1;
  bool renormalize = false;

  int count() const {
    return !fixture.empty() + !matrix_path.empty() + random_sparse.has_value() +
           random_walk.has_value() + !two_state.empty();
  }
};

void add_source_flags(CLI::App& cmd, SourceFlags& s) {
  cmd.add_option("--fixture", s.fixture, "Published test matrix P1..P4");
  cmd.add_option("--matrix", s.matrix_path, "dense-txt matrix file");
  cmd.add_option("--random-sparse", s.random_sparse,
                 "Random sparse irreducible matrix of this size");
  cmd.add_option("--random-walk", s.random_walk,
                 "Reflecting random walk of this size");
  cmd.add_option("--two-state", s.two_state, "Two-state chain [[1-A,A],[B,1-B]]")
      ->expected(2);
  cmd.add_option("--a", s.a, "Sparsity threshold for --random-sparse")
      ->capture_default_str();
  cmd.add_option("--seed", s.seed, "Seed for generators and Monte Carlo")
      ->capture_default_str();
  cmd.add_flag("--renormalize", s.renormalize,
               "Divide each row of a loaded matrix by its sum");
}

std::optional<GeneratorSpec> generator_spec(const SourceFlags& s) {
  if (!s.fixture.empty()) return FixtureSpec{s.fixture};
  if (s.random_sparse) return RandomSparseSpec{*s.random_sparse, s.a, s.seed};
  if (s.random_walk) return RandomWalkSpec{*s.random_walk};
  if (!s.two_state.empty()) return TwoStateSpec{s.two_state[0], s.two_state[1]};
  return std::nullopt;
}

struct LoadedChain {
  StochasticMatrix p;
  std::string label;
};

LoadedChain load_chain(const SourceFlags& s) {
  if (s.count() != 1) {
    throw Error(ErrorCode::kParamOutOfRange,
                "give exactly one of --fixture, --matrix, --random-sparse, "
                "--random-walk, --two-state");
  }
  if (!s.matrix_path.empty()) {
    Matrix raw = read_dense_txt_file(s.matrix_path);
    if (s.renormalize) raw = renormalize_rows(raw);
    return {validate_stochastic(raw), no_commas(s.matrix_path)};
  }
  const GeneratorSpec spec = *generator_spec(s);
  return {generate(spec), describe(spec)};
}

void add_solver_flags(CLI::App& cmd, RunConfig& c, std::vector<std::string>& algos,
                      std::optional<double>& rank_tol) {
  cmd.add_option("--algo", algos, "Solver: ls, xu, fundamental, mc (repeatable)")
      ->check(CLI::IsMember({"ls", "xu", "fundamental", "mc"}));
  cmd.add_option("--alpha", c.alpha, "Xu iteration parameter in [0, 1)")
      ->capture_default_str();
  cmd.add_option("--tol", c.tol, "Xu stopping tolerance")->capture_default_str();
  cmd.add_option("--max-iter", c.max_iter, "Xu iteration cap")->capture_default_str();
  cmd.add_option("--rank-tol", rank_tol, "Absolute rank threshold for ls");
  cmd.add_option("--repeats", c.repeats, "Timed runs per cell")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--trials", c.trials, "Monte Carlo trajectories per cell")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--horizon", c.horizon, "Monte Carlo step cap (0 = 1000 n)")
      ->capture_default_str();
  cmd.add_flag("--timing-strict", c.timing_strict,
               "Run every cell sequentially on one thread");
}

void finish_config(RunConfig& c, const std::vector<std::string>& algos,
                   const std::optional<double>& rank_tol, std::uint64_t seed) {
  if (!algos.empty()) {
    c.algorithms.clear();
    for (const auto& a : algos) c.algorithms.push_back(*parse_solver(a));
  }
  c.rank_tol = rank_tol;
  c.seed = seed;
  c.threads = c.timing_strict ? 0 : threads_from_env();
}

MfptMatrix solve_once(const StochasticMatrix& p, SolverKind algorithm,
                      const RunConfig& c) {
  switch (algorithm) {
    case SolverKind::kLeastSquares: {
      LsOptions opts;
      opts.min_norm.rank_tol = c.rank_tol;
      opts.threads = c.threads;
      return solve_ls(p, opts);
    }
    case SolverKind::kXu: {
      XuOptions opts;
      opts.alpha = c.alpha;
      opts.tol = c.tol;
      opts.max_iter = c.max_iter;
      return solve_xu(p, opts);
    }
    case SolverKind::kFundamental:
      return solve_fundamental(p);
    case SolverKind::kMonteCarlo: {
      MonteCarloOptions opts;
      opts.trials = c.trials;
      opts.seed = c.seed;
      opts.horizon = c.horizon;
      opts.threads = c.threads;
      return estimate_mc(p, opts).mean;
    }
  }
  throw Error(ErrorCode::kParamOutOfRange, "unknown solver");
}

// Streams CSV either to a file or to the caller's stdout.
class CsvSink {
 public:
  CsvSink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
      out_ = file_.get();
    }
    *out_ << kCsvHeader << '\n';
  }
  void write(const BenchRow& row) { *out_ << format_row(row) << '\n'; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

std::string matrix_file(const std::string& base, const std::string& tag,
                        SolverKind algorithm) {
  return base + "." + (tag.empty() ? "" : tag + ".") + to_string(algorithm) +
         ".mfpt.txt";
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size() || v < 2) {
      throw Error(ErrorCode::kParamOutOfRange,
                  "sweep sizes must be integers >= 2, got '" + item + "'");
    }
    sizes.push_back(static_cast<std::size_t>(v));
  }
  if (sizes.empty()) throw Error(ErrorCode::kParamOutOfRange, "empty sweep");
  return sizes;
}

std::vector<std::size_t> default_sweep(bool random_walk, std::size_t step) {
  std::vector<std::size_t> sizes;
  if (random_walk) {
    for (std::size_t n = 100; n <= 2000; n += step) sizes.push_back(n);
  } else {
    for (std::size_t n = 10; n <= 510; n += 100) sizes.push_back(n);
  }
  return sizes;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

int validate_report(const std::string& path, bool renormalize, std::ostream& out,
                    std::ostream& err) {
  Matrix raw;
  try {
    raw = read_dense_txt_file(path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  if (renormalize) raw = renormalize_rows(raw);

  out << "file: " << path << '\n';
  out << "n: " << raw.rows() << '\n';
  double worst = 0.0;
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    const double dev = raw.row(i).sum() - 1.0;
    worst = std::max(worst, std::abs(dev));
    if (std::abs(dev) > kDefaultRowSumTol) {
      out << "row_sum_deviation[" << i << "]: " << number(dev) << '\n';
    }
  }
  out << "max_row_sum_deviation: " << number(worst) << '\n';

  std::optional<StochasticMatrix> p;
  try {
    p = validate_stochastic(raw);
  } catch (const Error& e) {
    out << "valid: no\n";
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  out << "valid: yes\n";
  const ChainDiagnosis d = diagnose(*p);
  out << "irreducible: " << yes_no(d.irreducible) << '\n';
  if (d.irreducible) {
    out << "period: " << d.period << '\n';
    out << "aperiodic: " << yes_no(d.aperiodic) << '\n';
  }
  out << "symmetric: " << yes_no(raw == raw.transpose()) << '\n';

  // Pivot decay of I - P over its numerically nonzero pivots.
  const auto n = raw.rows();
  MinNormOptions opts;
  opts.require_compatible = false;
  const MinNormSolution s =
      min_norm_solve(Matrix::Identity(n, n) - raw, Vector::Zero(n), opts);
  out << "rank_i_minus_p: " << s.rank << '\n';
  out << "pivot_decay: " << number(s.pivot_decay) << '\n';
  out << "condition: "
      << (s.pivot_decay > kConditionWarningRatio ? "ConditionWarning" : "ok")
      << '\n';
  return kExitOk;
}

}  // namespace

unsigned threads_from_env() {
  if (const char* env = std::getenv("MFPT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CellResult run_cell(const StochasticMatrix& p, const std::string& label,
                    SolverKind algorithm, const RunConfig& config) {
  CellResult cell;
  BenchRow& row = cell.row;
  row.n = p.size();
  row.matrix = label;
  row.algorithm = algorithm;
  row.repeats = config.repeats;
  if (algorithm == SolverKind::kXu) row.alpha = config.alpha;

  try {
    double total = 0.0;
    for (int r = 0; r < config.repeats; ++r) {
      auto t = timed([&] { return solve_once(p, algorithm, config); });
      total += t.wall_time_s;
      cell.mfpt = std::move(t.result);
    }
    const ResidualReport report =
        make_report(p, *cell.mfpt, total / config.repeats);
    row.mean_time_s = report.wall_time_s;
    row.pze = report.pze;
    row.near_zero_frac = report.near_zero_frac;
    row.ore = report.ore;
    row.iterations = cell.mfpt->iterations;
    row.warning = no_commas(join(cell.mfpt->warnings, "; "));
    if (!std::isfinite(row.ore)) {
      row.failed = true;
      if (row.warning.empty()) row.warning = "NonFiniteResidual";
    }
  } catch (const MaxIterExceeded& e) {
    row.failed = true;
    row.iterations = e.iterations();
    row.warning = "MaxIterExceeded(k=" + std::to_string(e.iterations()) +
                  " delta=" + number(e.delta()) + ")";
    cell.mfpt.reset();
  } catch (const Error& e) {
    row.failed = true;
    row.warning = no_commas(e.what());
    cell.mfpt.reset();
  }
  return cell;
}

std::string format_row(const BenchRow& row) {
  std::ostringstream os;
  os << row.n << ',' << row.matrix << ',' << to_string(row.algorithm) << ','
     << (row.alpha ? number(*row.alpha) : "") << ',' << row.repeats << ',';
  if (row.failed) {
    os << "failed,failed,failed,failed,failed";
  } else {
    os << number(row.mean_time_s) << ',' << number(row.pze) << ','
       << number(row.near_zero_frac) << ',' << number(row.ore) << ','
       << row.iterations;
  }
  os << ',' << row.warning;
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Mean first passage times of ergodic Markov chains"};
  app.require_subcommand(1);

  SourceFlags src;
  RunConfig config;
  std::vector<std::string> algos;
  std::optional<double> rank_tol;
  std::string out_path;
  std::string matrix_out;
  bool emit_matrix = false;

  CLI::App* solve = app.add_subcommand("solve", "Solve one chain and report residuals");
  add_source_flags(*solve, src);
  add_solver_flags(*solve, config, algos, rank_tol);
  solve->add_option("--out", out_path, "CSV output path (default stdout)");
  solve->add_flag("--emit-matrix", emit_matrix, "Write each MFPT matrix as dense-txt");
  solve->add_option("--matrix-out", matrix_out, "Path for --emit-matrix");

  CLI::App* bench = app.add_subcommand("bench", "Sweep sizes and write CSV rows");
  add_source_flags(*bench, src);
  add_solver_flags(*bench, config, algos, rank_tol);
  std::string family = "random_sparse";
  std::optional<std::string> sizes_text;
  std::size_t step = 100;
  bench->add_option("--family", family, "random_sparse, random_walk or fixtures")
      ->check(CLI::IsMember({"random_sparse", "random_walk", "fixtures"}))
      ->capture_default_str();
  bench->add_option("--sizes", sizes_text, "Comma-separated sweep sizes");
  bench->add_option("--step", step, "Step of the default random_walk sweep")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", out_path, "CSV output path (default stdout)");
  bench->add_flag("--emit-matrix", emit_matrix, "Write each MFPT matrix as dense-txt");
  bench->add_option("--matrix-out", matrix_out, "Base path for --emit-matrix");

  CLI::App* validate = app.add_subcommand("validate", "Check a dense-txt matrix");
  std::string validate_path;
  validate->add_option("path", validate_path, "dense-txt file");
  validate->add_option("--matrix", validate_path, "dense-txt file");
  validate->add_flag("--renormalize", src.renormalize,
                     "Divide each row by its sum before checking");

  CLI::App* gen = app.add_subcommand("gen", "Write a test matrix as dense-txt");
  add_source_flags(*gen, src);
  gen->add_option("--out", out_path, "Output path (default stdout)");

  std::vector<std::string> argv_store{"mfpt"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*validate) {
      if (validate_path.empty()) {
        err << "error: validate needs a file path\n";
        return kExitInputError;
      }
      return validate_report(validate_path, src.renormalize, out, err);
    }

    if (*gen) {
      Matrix m;
      if (!src.fixture.empty() && src.count() == 1) {
        m = fixture_printed(src.fixture);
      } else {
        m = load_chain(src).p.matrix();
      }
      if (out_path.empty()) {
        write_dense_txt(out, m);
      } else {
        write_dense_txt_file(out_path, m);
      }
      return kExitOk;
    }

    finish_config(config, algos, rank_tol, src.seed);
    const std::string base = !matrix_out.empty() ? matrix_out
                             : !out_path.empty() ? out_path
                                                 : std::string("mfpt");

    if (*solve) {
      const LoadedChain chain = load_chain(src);
      CsvSink sink(out_path, out);
      int code = kExitOk;
      for (SolverKind algorithm : config.algorithms) {
        CellResult cell = run_cell(chain.p, chain.label, algorithm, config);
        sink.write(cell.row);
        if (cell.row.failed) code = kExitSolverFailure;
        if (emit_matrix && cell.mfpt) {
          const std::string path =
              !matrix_out.empty() && config.algorithms.size() == 1
                  ? matrix_out
                  : matrix_file(base, "", algorithm);
          write_dense_txt_file(path, cell.mfpt->values);
        }
      }
      return code;
    }

    // bench
    std::vector<std::pair<std::string, GeneratorSpec>> cells;
    if (src.random_walk) family = "random_walk";
    if (src.random_sparse) family = "random_sparse";
    if (!src.fixture.empty() || !src.matrix_path.empty() || !src.two_state.empty()) {
      throw Error(ErrorCode::kParamOutOfRange,
                  "bench sweeps generated families; use --family fixtures for P1..P4");
    }
    if (family == "fixtures") {
      for (const char* name : {"P1", "P2", "P3", "P4"}) {
        cells.emplace_back(name, FixtureSpec{name});
      }
    } else {
      const bool walk = family == "random_walk";
      std::vector<std::size_t> sizes;
      if (sizes_text) {
        sizes = parse_sizes(*sizes_text);
      } else if (src.random_walk || src.random_sparse) {
        sizes = {walk ? *src.random_walk : *src.random_sparse};
        if (sizes[0] < 2) throw Error(ErrorCode::kParamOutOfRange, "size must be >= 2");
      } else {
        sizes = default_sweep(walk, step);
      }
      for (std::size_t n : sizes) {
        GeneratorSpec spec = walk ? GeneratorSpec{RandomWalkSpec{n}}
                                  : GeneratorSpec{RandomSparseSpec{n, src.a, src.seed}};
        cells.emplace_back(std::to_string(n), spec);
      }
    }

    CsvSink sink(out_path, out);
    int code = kExitOk;
    for (const auto& [tag, spec] : cells) {
      std::optional<StochasticMatrix> p;
      try {
        p = generate(spec);
      } catch (const Error& e) {
        for (SolverKind algorithm : config.algorithms) {
          BenchRow row;
          row.matrix = describe(spec);
          row.algorithm = algorithm;
          row.repeats = config.repeats;
          row.failed = true;
          row.warning = no_commas(e.what());
          sink.write(row);
        }
        code = kExitSolverFailure;
        continue;
      }
      for (SolverKind algorithm : config.algorithms) {
        CellResult cell = run_cell(*p, describe(spec), algorithm, config);
        sink.write(cell.row);
        if (cell.row.failed) code = kExitSolverFailure;
        if (emit_matrix && cell.mfpt) {
          write_dense_txt_file(matrix_file(base, tag, algorithm), cell.mfpt->values);
        }
      }
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace mfpt::cli
