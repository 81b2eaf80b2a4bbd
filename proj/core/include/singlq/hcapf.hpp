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

#include <vector>

#include "singlq/classification.hpp"
#include "singlq/constraint_matrix.hpp"
#include "singlq/lq_model.hpp"

namespace singlq {

/// Matrices carried from one pass of the reduction to the next.
///
/// Constraints of the current level read  S (x; p) + Rk u_cur = 0, where
/// u_cur = residual_basis * u are the controls not yet fixed by feedback.
/// The solved controls obey  u = control_law (x; p) + residual_basis' u_cur.
struct StepState {
  Matrix G;   // 2n x 2n drift of the feedback-substituted system
  Matrix Z;   // 2n x m_cur
  Matrix S;   // l x 2n
  Matrix Rk;  // l x m_cur
  int k = 0;
  int m_cur = 0;

  InitialMatrices base;   // the unreduced problem
  Matrix control_law;     // m x 2n
  Matrix residual_basis;  // m_cur x m, orthonormal rows
};

/// State before the first pass: G0, Z0 and the independent rows of
/// [S1 | -R1].
StepState initial_state(const LQProblem& problem, Tolerance tol);

struct StepOutput {
  StepState next;
  Matrix feed;               // r x 2n: solved combinations as functions of (x; p)
  Matrix rotation;           // m_cur x m_cur right singular vectors of Rk
  Matrix solved_directions;  // r x m: the solved combinations in original controls
  int rank = 0;
};

/// One general pass: SVD split of Rk, partial feedback on the r solvable
/// control combinations, the drift update and the next constraint level.
StepOutput step(const StepState& state, Tolerance tol);

/// Substitutes the feedback of a step into constraint rows.
///
/// The u and v blocks are rotated by V, the first r rotated controls are
/// replaced by feed (x; p) and the matching v columns are discarded.
/// Throws DimensionMismatch on inconsistent shapes.
ConstraintMatrix apply_feedback_to_constraints(const ConstraintMatrix& phi,
                                               const Matrix& V,
                                               const Matrix& feed, int r,
                                               Tolerance tol);

/// Drops the v columns and re-independentizes what is left.
Matrix strip_coisotropic(const ConstraintMatrix& phi, Tolerance tol);

struct IterationRecord {
  int k = 0;
  int feedback_rank = 0;
  int m_cur = 0;           // residual controls after this pass
  int constraint_rank = 0; // independent extended constraints after this pass
  int first_class = 0;
  int second_class = 0;
  Matrix G;                // drift used by this pass
  double hamiltonian_asymmetry = 0.0;
};

struct ReductionResult {
  int n = 0;
  int m = 0;
  int index_k = 0;
  int m_res = 0;
  int rp = 0;

  /// Stacked feedback blocks: solved_directions * u = feedtot * (x; p).
  Matrix feedtot;            // (m - m_res) x 2n
  Matrix solved_directions;  // (m - m_res) x m
  /// Optimal control law u = control_law (x; p) + nofeed' u_res.
  Matrix control_law;        // m x 2n
  Matrix nofeed;             // m_res x m

  /// Final constraints over (x, p, u_res).
  Matrix phi_first;
  Matrix phi_second;
  /// Final constraints over the extended space, before v is removed.
  ClassifiedConstraints extended;
  /// Hamiltonian vector fields of the extended first-class rows, one per row.
  Matrix gauge_directions;

  Matrix G;  // final 2n x 2n drift
  Matrix Z;  // final 2n x m_res
  Matrix Ax, Ap, Qx, Qp;
  Matrix Bu, Nu;

  std::vector<IterationRecord> trace;
};

struct ReduceOptions {
  ClassificationMode classification = ClassificationMode::kIncremental;
};

/// Reduces a singular LQ problem to its final constraint subspace.
///
/// Throws the validation errors of validate() and NonConvergence when the
/// iteration exceeds 2(n + m) + 2 passes.
ReductionResult reduce(const LQProblem& problem, Tolerance tol,
                       const ReduceOptions& options = {});

/// Final constraint subspace in (x, p, u) with the feedback relations put
/// back, so results with different residual controls become comparable.
Matrix reinflated_constraints(const ReductionResult& result, Tolerance tol);

}  // namespace singlq
