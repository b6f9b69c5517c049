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

#include "mfpt/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "mfpt/error.hpp"

namespace mfpt {
namespace {

using Index = Eigen::Index;

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Householder {
  double tau = 0.0;
  double beta = 0.0;  // value left in the leading position
};

// Builds H = I - tau v v^T with v(0) = 1 such that H x = beta e_0. The
// essential part of v overwrites x(1:).
template <typename Segment>
Householder make_householder(Segment x) {
  Householder h;
  const Index len = x.size();
  const double alpha = x(0);
  const double tail_sq = len > 1 ? x.tail(len - 1).squaredNorm() : 0.0;
  if (tail_sq == 0.0) {
    h.beta = alpha;
    if (len > 1) x.tail(len - 1).setZero();
    return h;
  }
  double beta = std::sqrt(alpha * alpha + tail_sq);
  if (alpha >= 0.0) beta = -beta;
  h.tau = (beta - alpha) / beta;
  x.tail(len - 1) /= (alpha - beta);
  h.beta = beta;
  return h;
}

// Column-pivoted Householder QR, A P = Q R, with LAPACK-style column norm
// downdating.
struct PivotedQr {
  Matrix qr;
  std::vector<double> tau;
  std::vector<Index> perm;  // column k of A P is column perm[k] of A
};

PivotedQr pivoted_qr(const Matrix& a) {
  PivotedQr f{a, {}, {}};
  const Index m = a.rows();
  const Index n = a.cols();
  const Index steps = std::min(m, n);
  f.tau.assign(static_cast<std::size_t>(steps), 0.0);
  f.perm.resize(static_cast<std::size_t>(n));
  std::iota(f.perm.begin(), f.perm.end(), Index{0});

  std::vector<double> norm(static_cast<std::size_t>(n));
  std::vector<double> norm_ref(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    norm[j] = norm_ref[j] = f.qr.col(j).norm();
  }
  const double tol3z = std::sqrt(kEps);

  Vector v(m);
  Eigen::RowVectorXd w(n);
  for (Index k = 0; k < steps; ++k) {
    const auto best = std::max_element(norm.begin() + k, norm.end());
    const Index pvt = static_cast<Index>(best - norm.begin());
    if (pvt != k) {
      f.qr.col(k).swap(f.qr.col(pvt));
      std::swap(f.perm[k], f.perm[pvt]);
      std::swap(norm[k], norm[pvt]);
      std::swap(norm_ref[k], norm_ref[pvt]);
    }

    const Index len = m - k;
    const Householder h = make_householder(f.qr.col(k).tail(len));
    f.tau[k] = h.tau;
    f.qr(k, k) = h.beta;

    const Index rest = n - k - 1;
    if (rest > 0 && h.tau != 0.0) {
      auto vk = v.head(len);
      vk(0) = 1.0;
      vk.tail(len - 1) = f.qr.col(k).tail(len - 1);
      auto block = f.qr.block(k, k + 1, len, rest);
      auto wk = w.head(rest);
      wk.noalias() = vk.transpose() * block;
      block.noalias() -= (h.tau * vk) * wk;
    }

    for (Index j = k + 1; j < n; ++j) {
      if (norm[j] == 0.0) continue;
      double t = std::abs(f.qr(k, j)) / norm[j];
      t = std::max(0.0, (1.0 + t) * (1.0 - t));
      const double ratio = norm[j] / norm_ref[j];
      if (t * ratio * ratio <= tol3z) {
        norm[j] = k + 1 < m ? f.qr.col(j).tail(m - k - 1).norm() : 0.0;
        norm_ref[j] = norm[j];
      } else {
        norm[j] *= std::sqrt(t);
      }
    }
  }
  return f;
}

// Applies Q^T from a pivoted QR to b in place.
void apply_qt(const PivotedQr& f, Vector& b) {
  const Index m = f.qr.rows();
  for (Index k = 0; k < static_cast<Index>(f.tau.size()); ++k) {
    if (f.tau[k] == 0.0) continue;
    const Index len = m - k;
    double dot = b(k) + f.qr.col(k).tail(len - 1).dot(b.tail(len - 1));
    dot *= f.tau[k];
    b(k) -= dot;
    b.tail(len - 1) -= dot * f.qr.col(k).tail(len - 1);
  }
}

MinNormSolution solve_cod(const Matrix& a, const Vector& b, double rank_tol) {
  const Index m = a.rows();
  const Index n = a.cols();
  PivotedQr f = pivoted_qr(a);

  Index rank = 0;
  const Index steps = std::min(m, n);
  while (rank < steps && std::abs(f.qr(rank, rank)) > rank_tol) ++rank;

  MinNormSolution out;
  out.rank = static_cast<std::size_t>(rank);
  out.pivot_decay =
      rank > 0 ? std::abs(f.qr(0, 0)) / std::abs(f.qr(rank - 1, rank - 1)) : 1.0;

  Vector c = b;
  apply_qt(f, c);

  Vector y = Vector::Zero(n);
  if (rank == 0) {
    out.x = y;
    return out;
  }

  // Trailing columns of the upper trapezoid [R11 R12] are annihilated by
  // Householder reflectors applied from the right, row by row from the bottom:
  // [R11 R12] H_(r-1) ... H_0 = [T 0].
  Matrix r = f.qr.topRows(rank).template triangularView<Eigen::Upper>();
  const Index extra = n - rank;
  std::vector<double> z_tau(static_cast<std::size_t>(rank), 0.0);
  if (extra > 0) {
    Vector z(extra + 1);
    for (Index k = rank - 1; k >= 0; --k) {
      z(0) = r(k, k);
      z.tail(extra) = r.row(k).tail(extra).transpose();
      const Householder h = make_householder(z.segment(0, extra + 1));
      z_tau[k] = h.tau;
      r(k, k) = h.beta;
      r.row(k).tail(extra) = z.tail(extra).transpose();  // essential part
      if (h.tau == 0.0 || k == 0) continue;
      // Rows 0..k-1: row <- row - tau (row . v) v^T over columns {k} + tail.
      auto upper_k = r.col(k).head(k);
      auto upper_tail = r.block(0, rank, k, extra);
      Vector dot = upper_k + upper_tail * z.tail(extra);
      dot *= h.tau;
      upper_k -= dot;
      upper_tail.noalias() -= dot * z.tail(extra).transpose();
    }
  }

  y.head(rank) = r.topLeftCorner(rank, rank)
                     .template triangularView<Eigen::Upper>()
                     .solve(c.head(rank));

  // y <- Z^T y = H_(r-1) ... H_0 y.
  if (extra > 0) {
    for (Index k = 0; k < rank; ++k) {
      if (z_tau[k] == 0.0) continue;
      const auto vt = r.row(k).tail(extra);
      double dot = y(k) + vt.dot(y.tail(extra).transpose());
      dot *= z_tau[k];
      y(k) -= dot;
      y.tail(extra) -= dot * vt.transpose();
    }
  }

  out.x.resize(n);
  for (Index k = 0; k < n; ++k) out.x(f.perm[k]) = y(k);
  return out;
}

MinNormSolution solve_svd(const Matrix& a, const Vector& b, double rank_tol) {
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  Index rank = 0;
  while (rank < s.size() && s(rank) > rank_tol) ++rank;
  MinNormSolution out;
  out.rank = static_cast<std::size_t>(rank);
  out.pivot_decay = rank > 0 ? s(0) / s(rank - 1) : 1.0;
  Vector coeff = svd.matrixU().leftCols(rank).transpose() * b;
  coeff.array() /= s.head(rank).array();
  out.x = svd.matrixV().leftCols(rank) * coeff;
  return out;
}

double inf_norm(const Matrix& a) {
  return a.rows() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace

MinNormSolution min_norm_solve(const Matrix& a, const Vector& b,
                               const MinNormOptions& options) {
  if (a.rows() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "right-hand side length does not match row count");
  }
  const double n = static_cast<double>(std::max(a.rows(), a.cols()));
  const double tol = options.rank_tol.value_or(n * kEps * inf_norm(a));

  MinNormSolution out = options.method == MinNormMethod::kSvd
                            ? solve_svd(a, b, tol)
                            : solve_cod(a, b, tol);
  out.residual_norm = (a * out.x - b).norm();
  if (options.require_compatible &&
      out.residual_norm > 1e-6 * std::max(1.0, b.norm())) {
    throw IncompatibleSystem(out.residual_norm);
  }
  return out;
}

Matrix LuFactors::lower() const {
  Matrix l = lu.template triangularView<Eigen::StrictlyLower>();
  l.diagonal().setOnes();
  return l;
}

Matrix LuFactors::upper() const {
  return lu.template triangularView<Eigen::Upper>();
}

Matrix LuFactors::permutation() const {
  const Index n = lu.rows();
  Matrix pm = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) pm(k, perm(k)) = 1.0;
  return pm;
}

LuFactors lu_factorize(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kNotSquare, "LU factorization needs a square matrix");
  }
  const Index n = a.rows();
  LuFactors f{a, Eigen::VectorXi::LinSpaced(n, 0, static_cast<int>(n) - 1)};
  const double threshold = 1e-14 * inf_norm(a);

  for (Index k = 0; k < n; ++k) {
    Index pvt = 0;
    const double mag = f.lu.col(k).tail(n - k).cwiseAbs().maxCoeff(&pvt);
    pvt += k;
    if (mag < threshold || mag == 0.0) {
      throw SingularPivot(static_cast<std::size_t>(k), mag);
    }
    if (pvt != k) {
      f.lu.row(k).swap(f.lu.row(pvt));
      std::swap(f.perm(k), f.perm(pvt));
    }
    const Index rest = n - k - 1;
    if (rest == 0) continue;
    f.lu.col(k).tail(rest) /= f.lu(k, k);
    f.lu.bottomRightCorner(rest, rest).noalias() -=
        f.lu.col(k).tail(rest) * f.lu.row(k).tail(rest);
  }
  return f;
}

Matrix lu_solve(const LuFactors& f, const Matrix& b) {
  const Index n = f.lu.rows();
  if (b.rows() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "right-hand side row count does not match factors");
  }
  Matrix x(n, b.cols());
  for (Index k = 0; k < n; ++k) x.row(k) = b.row(f.perm(k));
  f.lu.template triangularView<Eigen::UnitLower>().solveInPlace(x);
  f.lu.template triangularView<Eigen::Upper>().solveInPlace(x);
  return x;
}

}  // namespace mfpt
