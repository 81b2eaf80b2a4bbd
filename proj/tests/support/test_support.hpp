/*
 * Copyright 2026 The singlq Authors
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
 */

#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "singlq/lq_model.hpp"

namespace singlq::testing {

inline Matrix gaussian(Eigen::Index rows, Eigen::Index cols,
                       std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix M(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = g(rng);
  return M;
}

inline Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(n, n, rng));
  return qr.householderQ();
}

inline Matrix symmetric(const Matrix& M) { return 0.5 * (M + M.transpose()); }

/// Random problem with standard normal entries. With singular set, the last
/// row and column of R are zeroed.
inline LQProblem random_problem(int n, int m, bool singular,
                                std::mt19937_64& rng) {
  LQProblem p;
  p.A = gaussian(n, n, rng);
  p.B = gaussian(n, m, rng);
  p.Q = symmetric(gaussian(n, n, rng));
  p.N = gaussian(n, m, rng);
  p.R = symmetric(gaussian(m, m, rng));
  if (singular) {
    p.R.row(m - 1).setZero();
    p.R.col(m - 1).setZero();
  }
  return p;
}

/// Symmetric positive definite R with eigenvalues in [1, 3].
inline LQProblem random_regular_problem(int n, int m, std::mt19937_64& rng) {
  LQProblem p = random_problem(n, m, false, rng);
  const Matrix U = random_orthogonal(m, rng);
  std::uniform_real_distribution<double> ev(1.0, 3.0);
  Vector d(m);
  for (int i = 0; i < m; ++i) d(i) = ev(rng);
  p.R = symmetric(U * d.asDiagonal() * U.transpose());
  return p;
}

/// Classical Gram-Schmidt over the rows, dropping rows whose residual norm
/// falls below drop.
inline Matrix gram_schmidt_rows(const Matrix& M, double drop) {
  Matrix basis(0, M.cols());
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Eigen::RowVectorXd r = M.row(i);
    for (Eigen::Index j = 0; j < basis.rows(); ++j) {
      r -= r.dot(basis.row(j)) * basis.row(j);
    }
    const double norm = r.norm();
    if (norm > drop) {
      basis.conservativeResize(basis.rows() + 1, Eigen::NoChange);
      basis.row(basis.rows() - 1) = r / norm;
    }
  }
  return basis;
}

/// Central difference gradient of f at z with step h.
inline Vector central_gradient(const std::function<double(const Vector&)>& f,
                               const Vector& z, double h) {
  Vector g(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    Vector zp = z, zm = z;
    zp(i) += h;
    zm(i) -= h;
    g(i) = (f(zp) - f(zm)) / (2 * h);
  }
  return g;
}

}  // namespace singlq::testing
