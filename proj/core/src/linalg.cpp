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

#include "singlq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace singlq {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAsymmetricQ: return "AsymmetricQ";
    case ErrorCode::kAsymmetricR: return "AsymmetricR";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::kEmptySubspace: return "EmptySubspace";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kInvalidShape: return "InvalidShape";
    case ErrorCode::kInsufficientData: return "InsufficientData";
  }
  return "Unknown";
}

Tolerance::Tolerance(double tol) : tol_(tol) {
  if (!(std::isfinite(tol) && tol > 0.0)) {
    throw Error(ErrorCode::kInvalidShape,
                "tolerance must be finite and positive, got " +
                    std::to_string(tol));
  }
}

namespace {

// Eigen 3.4's divide-and-conquer SVD loses small singular values on some
// rank-deficient stacks, which flips numerical ranks. Jacobi is slower but
// accurate to working precision.
using Svd = Eigen::JacobiSVD<Matrix>;

int count_above(const Vector& sigma, double tol) {
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > tol) ++r;
  }
  return r;
}

bool is_empty(const Matrix& M) { return M.rows() == 0 || M.cols() == 0; }

}  // namespace

int rank_tol(const Matrix& M, Tolerance tol) {
  if (is_empty(M)) return 0;
  Svd svd(M);
  return count_above(svd.singularValues(), tol.value());
}

Matrix independent_rows(const Matrix& M, Tolerance tol) {
  if (is_empty(M)) return Matrix(0, M.cols());
  Svd svd(M, Eigen::ComputeThinV);
  const int r = count_above(svd.singularValues(), tol.value());
  return svd.singularValues().head(r).asDiagonal() *
         svd.matrixV().leftCols(r).transpose();
}

Matrix row_basis(const Matrix& M, Tolerance tol) {
  if (is_empty(M)) return Matrix(0, M.cols());
  Svd svd(M, Eigen::ComputeThinV);
  const int r = count_above(svd.singularValues(), tol.value());
  return svd.matrixV().leftCols(r).transpose();
}

KernelSplit numerical_ker(const Matrix& A, Tolerance tol) {
  const Eigen::Index n = A.cols();
  if (A.rows() == 0 || n == 0) {
    return {Matrix::Identity(n, n), Matrix(n, 0)};
  }
  Svd svd(A, Eigen::ComputeFullV);
  const int r = count_above(svd.singularValues(), tol.value());
  const Matrix& V = svd.matrixV();
  return {V.rightCols(n - r), V.leftCols(r)};
}

double subspace_angle(const Matrix& M1, const Matrix& M2, Tolerance tol) {
  if (M1.cols() != M2.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "subspace_angle: column counts " + std::to_string(M1.cols()) +
                    " and " + std::to_string(M2.cols()) + " differ");
  }
  Matrix Q1 = row_basis(M1, tol);
  Matrix Q2 = row_basis(M2, tol);
  if (Q1.rows() == 0 || Q2.rows() == 0) {
    throw Error(ErrorCode::kEmptySubspace, "subspace_angle: rank zero input");
  }
  if (Q1.rows() > Q2.rows()) std::swap(Q1, Q2);

  // Cosine from the smallest singular value of Q1 Q2', sine from the
  // component of Q1 outside span(Q2). The sine keeps tiny angles accurate.
  const Matrix C = Q1 * Q2.transpose();
  const double c = Svd(C).singularValues().minCoeff();
  const Matrix outside = Q1 - C * Q2;
  const double s = spectral_norm(outside);
  return std::atan2(std::clamp(s, 0.0, 1.0), std::clamp(c, 0.0, 1.0));
}

double spectral_norm(const Matrix& M) {
  if (is_empty(M)) return 0.0;
  return Svd(M).singularValues()(0);
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vstack: column counts " + std::to_string(top.cols()) +
                    " and " + std::to_string(bottom.cols()) + " differ");
  }
  Matrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

bool all_finite(const Matrix& M) { return M.allFinite(); }

}  // namespace singlq
