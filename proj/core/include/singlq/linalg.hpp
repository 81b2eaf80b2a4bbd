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

#include <utility>

#include <Eigen/Dense>

#include "singlq/errors.hpp"

namespace singlq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Absolute threshold on singular values. A singular value counts towards
/// the rank only when it is strictly greater than this value.
class Tolerance {
 public:
  static constexpr double kDefault = 1e-6;

  Tolerance() = default;
  /// Throws InvalidShape unless tol is finite and positive.
  explicit Tolerance(double tol);

  double value() const noexcept { return tol_; }

 private:
  double tol_ = kDefault;
};

/// Number of singular values of M strictly above tol. Zero for empty M.
int rank_tol(const Matrix& M, Tolerance tol);

/// Orthogonal rows spanning the numerical row space of M (Sigma_r * V_r^T).
/// Returns a 0 x cols matrix when the rank is zero.
Matrix independent_rows(const Matrix& M, Tolerance tol);

/// Orthonormal row basis of the numerical row space (V_r^T).
Matrix row_basis(const Matrix& M, Tolerance tol);

struct KernelSplit {
  Matrix v;  // cols x (cols - r): numerical kernel
  Matrix w;  // cols x r: orthonormal completion
};

/// Right singular vectors of A split at the numerical rank.
KernelSplit numerical_ker(const Matrix& A, Tolerance tol);

/// Largest principal angle between the row spaces of M1 and M2.
///
/// When the ranks differ, the angle measures how far the smaller space is
/// from lying inside the larger one. Throws DimensionMismatch if the column
/// counts differ and EmptySubspace if either rank is zero.
double subspace_angle(const Matrix& M1, const Matrix& M2, Tolerance tol);

/// Largest singular value, zero for empty input.
double spectral_norm(const Matrix& M);

/// Rows of top stacked over rows of bottom. Column counts must agree.
Matrix vstack(const Matrix& top, const Matrix& bottom);

/// True if every entry is finite.
bool all_finite(const Matrix& M);

}  // namespace singlq
