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

#include "singlq/lq_model.hpp"

#include <string>

namespace singlq {

namespace {

std::string shape(const Matrix& M) {
  return std::to_string(M.rows()) + "x" + std::to_string(M.cols());
}

void expect_shape(const char* name, const Matrix& M, Eigen::Index rows,
                  Eigen::Index cols) {
  if (M.rows() != rows || M.cols() != cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(name) + " has shape " + shape(M) + ", expected " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

void expect_finite(const char* name, const Matrix& M) {
  if (!all_finite(M)) {
    throw Error(ErrorCode::kNonFiniteEntry,
                std::string(name) + " contains a non-finite entry");
  }
}

void expect_symmetric(const char* name, const Matrix& M, ErrorCode code) {
  const double gap = spectral_norm(M - M.transpose());
  if (!(gap < 1e-12 * (1.0 + spectral_norm(M)))) {
    throw Error(code, std::string(name) + " is not symmetric (||" + name +
                          " - " + name + "'|| = " + std::to_string(gap) + ")");
  }
}

}  // namespace

void validate(const LQProblem& problem) {
  const Eigen::Index n = problem.A.rows();
  const Eigen::Index m = problem.B.cols();
  if (n < 1) throw Error(ErrorCode::kDimensionMismatch, "A must be at least 1x1");
  if (m < 1) throw Error(ErrorCode::kDimensionMismatch, "B needs at least one column");
  expect_shape("A", problem.A, n, n);
  expect_shape("B", problem.B, n, m);
  expect_shape("Q", problem.Q, n, n);
  expect_shape("N", problem.N, n, m);
  expect_shape("R", problem.R, m, m);
  expect_finite("A", problem.A);
  expect_finite("B", problem.B);
  expect_finite("Q", problem.Q);
  expect_finite("N", problem.N);
  expect_finite("R", problem.R);
  expect_symmetric("Q", problem.Q, ErrorCode::kAsymmetricQ);
  expect_symmetric("R", problem.R, ErrorCode::kAsymmetricR);
}

double pontryagin_hamiltonian(const LQProblem& problem,
                              const ExtendedPoint& pt) {
  const Eigen::Index n = problem.A.rows();
  const Eigen::Index m = problem.B.cols();
  if (pt.x.size() != n || pt.p.size() != n || pt.u.size() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point does not match problem dimensions n=" +
                    std::to_string(n) + ", m=" + std::to_string(m));
  }
  const auto& x = pt.x;
  const auto& u = pt.u;
  return pt.p.dot(problem.A * x + problem.B * u) -
         0.5 * x.dot(problem.Q * x) - x.dot(problem.N * u) -
         0.5 * u.dot(problem.R * u);
}

InitialMatrices initial_matrices(const LQProblem& problem) {
  validate(problem);
  const int n = problem.n();
  const int m = problem.m();
  InitialMatrices out;
  out.G0 = Matrix::Zero(2 * n, 2 * n);
  out.G0.topLeftCorner(n, n) = problem.A;
  out.G0.bottomLeftCorner(n, n) = problem.Q;
  out.G0.bottomRightCorner(n, n) = -problem.A.transpose();
  out.Z0.resize(2 * n, m);
  out.Z0 << problem.B, problem.N;
  out.S1.resize(m, 2 * n);
  out.S1 << -problem.N.transpose(), problem.B.transpose();
  out.R1 = problem.R;
  return out;
}

Matrix symplectic_j(int n) {
  Matrix J = Matrix::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -Matrix::Identity(n, n);
  J.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  return J;
}

double hamiltonian_asymmetry(const Matrix& G) {
  const Matrix JG = symplectic_j(static_cast<int>(G.rows() / 2)) * G;
  return spectral_norm(JG - JG.transpose());
}

}  // namespace singlq
