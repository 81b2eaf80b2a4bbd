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

#include "singlq/oracle.hpp"

#include <string>

namespace singlq {

OracleResult recursive_reduce(const LQProblem& problem, Tolerance tol) {
  const InitialMatrices init = initial_matrices(problem);
  const int n = problem.n();
  const int m = problem.m();

  // Derivative of a constraint K_xp (x; p) + K_u u along the dynamics, for
  // the combinations whose u-part vanishes: K_xp [G0 | Z0] (x; p; u).
  Matrix dynamics(2 * n, 2 * n + m);
  dynamics << init.G0, init.Z0;

  Matrix primary(m, 2 * n + m);
  primary << init.S1, -init.R1;
  Matrix K = independent_rows(primary, tol);

  OracleResult out;
  const int max_passes = 2 * n + m + 1;
  for (int pass = 1;; ++pass) {
    out.index_k = pass;
    const Matrix left_null = numerical_ker(K.rightCols(m).transpose(), tol).v;
    const Matrix fresh =
        left_null.transpose() * K.leftCols(2 * n) * dynamics;
    const Matrix grown = independent_rows(vstack(K, fresh), tol);
    if (grown.rows() <= K.rows()) break;
    K = grown;
    if (pass >= max_passes) {
      throw Error(ErrorCode::kNonConvergence,
                  "oracle did not stabilize after " +
                      std::to_string(max_passes) + " passes");
    }
  }
  out.final_constraints = K;
  return out;
}

double compare_final_subspaces(const OracleResult& a, const ReductionResult& b,
                               Tolerance tol) {
  const Matrix rebuilt = reinflated_constraints(b, tol);
  if (a.final_constraints.cols() != rebuilt.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "oracle works on " + std::to_string(a.final_constraints.cols()) +
                    " coordinates, reduction on " +
                    std::to_string(rebuilt.cols()));
  }
  const int ra = rank_tol(a.final_constraints, tol);
  const int rb = rank_tol(rebuilt, tol);
  if (ra != rb) {
    throw Error(ErrorCode::kDimensionMismatch,
                "final subspaces have codimension " + std::to_string(ra) +
                    " and " + std::to_string(rb));
  }
  if (ra == 0) return 0.0;
  return subspace_angle(a.final_constraints, rebuilt, tol);
}

}  // namespace singlq
