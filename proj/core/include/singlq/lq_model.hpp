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

#include <string>

#include "singlq/linalg.hpp"

namespace singlq {

/// Cost  1/2 x'Qx + x'Nu + 1/2 u'Ru  subject to  xdot = Ax + Bu.
struct LQProblem {
  Matrix A;  // n x n
  Matrix B;  // n x m
  Matrix Q;  // n x n, symmetric
  Matrix N;  // n x m
  Matrix R;  // m x m, symmetric
  std::string name;

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(B.cols()); }
};

/// A point of the extended phase space (x, p, u, v).
struct ExtendedPoint {
  Vector x;
  Vector p;
  Vector u;
  Vector v;  // ignored by the Hamiltonian; may be empty
};

/// Matrices that seed the reduction.
///
/// The dynamics read  (xdot; pdot) = G0 (x; p) + Z0 u  and the primary
/// constraints read  S1 (x; p) - R1 u = 0.
struct InitialMatrices {
  Matrix G0;  // 2n x 2n
  Matrix Z0;  // 2n x m
  Matrix S1;  // m x 2n
  Matrix R1;  // m x m
};

/// Throws Error with AsymmetricQ, AsymmetricR, DimensionMismatch or
/// NonFiniteEntry. The message names the offending block.
void validate(const LQProblem& problem);

/// H = p'(Ax + Bu) - 1/2 x'Qx - x'Nu - 1/2 u'Ru.
double pontryagin_hamiltonian(const LQProblem& problem,
                              const ExtendedPoint& pt);

InitialMatrices initial_matrices(const LQProblem& problem);

/// Canonical symplectic matrix [[0, -I], [I, 0]] of size 2n.
///
/// With this orientation S1 = -Z0' J, and a linear field G z is Hamiltonian
/// exactly when J G is symmetric.
Matrix symplectic_j(int n);

/// ||J G - (J G)'|| in the spectral norm.
double hamiltonian_asymmetry(const Matrix& G);

}  // namespace singlq
