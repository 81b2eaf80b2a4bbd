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

#include "singlq/hcapf.hpp"

#include <string>

namespace singlq {

namespace {

// Drift of the system obtained by substituting u = F (x; p) into the
// Hamiltonian, restricted to the directions the residual controls leave
// free:  G = G0 + Z0 F - J F' (S1 - R F).
//
// On the constraint set this agrees with adding Z~ Feed to the previous
// drift, and J G stays symmetric to rounding.
// G0 + Z0 F - J F'(S1 - R1 F), evaluated through J times the update, which
// equals M + M' - F' R1 F with M = J Z0 F because S1 = -Z0' J. Forming it that
// way keeps J G symmetric to rounding even when F has huge entries.
Matrix feedback_drift(const InitialMatrices& base, const Matrix& F) {
  const int n = static_cast<int>(base.G0.rows() / 2);
  const Matrix J = symplectic_j(n);
  const Matrix M = J * base.Z0 * F;
  const Matrix FRF = F.transpose() * (base.R1 * F);
  const Matrix JdG = M + M.transpose() - 0.5 * (FRF + FRF.transpose());
  return base.G0 - J * JdG;
}

Matrix hamiltonian_field_rows(const ConstraintMatrix& phi) {
  const int n = phi.n();
  const int m = phi.m_cur();
  Matrix out(phi.count(), phi.cols());
  out.leftCols(n) = phi.p_block();
  out.middleCols(n, n) = -phi.x_block();
  out.middleCols(2 * n, m) = phi.v_block();
  out.rightCols(m) = -phi.u_block();
  return out;
}

ConstraintMatrix append_v_zeros(const Matrix& S, const Matrix& Rk, int n,
                                int m_cur) {
  Matrix rows = Matrix::Zero(S.rows(), 2 * n + 2 * m_cur);
  rows.leftCols(2 * n) = S;
  rows.middleCols(2 * n, m_cur) = Rk;
  return ConstraintMatrix(std::move(rows), n, m_cur);
}

int stacked_rank(const ClassifiedConstraints& c, Tolerance tol) {
  return rank_tol(vstack(c.first_class.rows(), c.second_class.rows()), tol);
}

}  // namespace

StepState initial_state(const LQProblem& problem, Tolerance tol) {
  const InitialMatrices init = initial_matrices(problem);
  const int n = problem.n();
  const int m = problem.m();
  Matrix primary(m, 2 * n + m);
  primary << init.S1, -init.R1;
  const Matrix indep = independent_rows(primary, tol);

  StepState s;
  s.G = init.G0;
  s.Z = init.Z0;
  s.S = indep.leftCols(2 * n);
  s.Rk = indep.rightCols(m);
  s.k = 0;
  s.m_cur = m;
  s.base = init;
  s.control_law = Matrix::Zero(m, 2 * n);
  s.residual_basis = Matrix::Identity(m, m);
  return s;
}

StepOutput step(const StepState& state, Tolerance tol) {
  const Eigen::Index two_n = state.G.rows();
  const int m_cur = state.m_cur;
  const Eigen::Index m = state.residual_basis.cols();

  StepOutput out;
  out.next = state;
  out.next.k = state.k + 1;
  out.rank = rank_tol(state.Rk, tol);
  const int r = out.rank;

  if (r == 0) {
    out.rotation = Matrix::Identity(m_cur, m_cur);
    out.feed = Matrix(0, two_n);
    out.solved_directions = Matrix(0, m);
    out.next.Rk = state.S * state.Z;
    out.next.S = state.S * state.G;
    return out;
  }

  Eigen::JacobiSVD<Matrix> svd(state.Rk,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix& V = svd.matrixV();
  const Matrix US = svd.matrixU().transpose() * state.S;
  const Eigen::Index l = US.rows();

  // Top r rows read  Sigma_r u~ + S_f (x; p) = 0  with u~ = V_r' u_cur.
  out.feed = -(svd.singularValues().head(r).cwiseInverse().asDiagonal() *
               US.topRows(r));
  out.rotation = V;
  out.solved_directions = V.leftCols(r).transpose() * state.residual_basis;

  StepState& next = out.next;
  next.m_cur = m_cur - r;
  next.residual_basis = V.rightCols(m_cur - r).transpose() * state.residual_basis;
  next.control_law =
      state.control_law + out.solved_directions.transpose() * out.feed;
  next.Z = state.Z * V.rightCols(m_cur - r);
  next.G = feedback_drift(state.base, next.control_law);

  const Matrix Sc = US.bottomRows(l - r);
  next.Rk = Sc * next.Z;
  next.S = Sc * next.G;
  return out;
}

ConstraintMatrix apply_feedback_to_constraints(const ConstraintMatrix& phi,
                                               const Matrix& V,
                                               const Matrix& feed, int r,
                                               Tolerance tol) {
  const int n = phi.n();
  const int m_cur = phi.m_cur();
  if (V.rows() != m_cur || V.cols() != m_cur) {
    throw Error(ErrorCode::kDimensionMismatch,
                "rotation must be " + std::to_string(m_cur) + "x" +
                    std::to_string(m_cur));
  }
  if (r < 0 || r > m_cur) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feedback rank " + std::to_string(r) + " exceeds " +
                    std::to_string(m_cur) + " controls");
  }
  if (feed.rows() != r || feed.cols() != 2 * n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feed must be " + std::to_string(r) + "x" +
                    std::to_string(2 * n));
  }
  const int m_next = m_cur - r;
  if (phi.count() == 0) return ConstraintMatrix::empty(n, m_next);

  const Matrix u_rot = phi.u_block() * V;
  const Matrix v_rot = phi.v_block() * V;
  Matrix rows(phi.count(), 2 * n + 2 * m_next);
  rows.leftCols(2 * n) = phi.xp_block() + u_rot.leftCols(r) * feed;
  rows.middleCols(2 * n, m_next) = u_rot.rightCols(m_next);
  rows.rightCols(m_next) = v_rot.rightCols(m_next);
  return ConstraintMatrix(independent_rows(rows, tol), n, m_next);
}

Matrix strip_coisotropic(const ConstraintMatrix& phi, Tolerance tol) {
  return independent_rows(phi.rows().leftCols(2 * phi.n() + phi.m_cur()), tol);
}

ReductionResult reduce(const LQProblem& problem, Tolerance tol,
                       const ReduceOptions& options) {
  validate(problem);
  const int n = problem.n();
  const int m = problem.m();
  const int max_passes = 2 * (n + m) + 2;

  StepState state = initial_state(problem, tol);

  // Zero-order constraints v = 0 followed by the primary constraints.
  Matrix seed = Matrix::Zero(m + state.S.rows(), 2 * n + 2 * m);
  seed.topRightCorner(m, m) = Matrix::Identity(m, m);
  seed.bottomLeftCorner(state.S.rows(), 2 * n) = state.S;
  seed.block(m, 2 * n, state.S.rows(), m) = state.Rk;
  ClassifiedConstraints classes = split_first_second(
      ConstraintMatrix(independent_rows(seed, tol), n, m), tol);

  Matrix feedtot(0, 2 * n);
  Matrix solved(0, m);
  std::vector<IterationRecord> trace;

  while (true) {
    if (state.k >= max_passes) {
      throw Error(ErrorCode::kNonConvergence,
                  "no stabilization after " + std::to_string(max_passes) +
                      " passes");
    }
    StepOutput out = step(state, tol);
    if (out.rank > 0) {
      classes.first_class = apply_feedback_to_constraints(
          classes.first_class, out.rotation, out.feed, out.rank, tol);
      classes.second_class = apply_feedback_to_constraints(
          classes.second_class, out.rotation, out.feed, out.rank, tol);
      feedtot = vstack(feedtot, out.feed);
      solved = vstack(solved, out.solved_directions);
    }
    const int before = stacked_rank(classes, tol);

    const ConstraintMatrix fresh =
        append_v_zeros(out.next.S, out.next.Rk, n, out.next.m_cur);
    classes = classify_with_new_rows(classes, fresh, tol,
                                     options.classification);
    const int after = stacked_rank(classes, tol);

    IterationRecord rec;
    rec.k = out.next.k;
    rec.feedback_rank = out.rank;
    rec.m_cur = out.next.m_cur;
    rec.constraint_rank = after;
    rec.first_class = classes.first_class.count();
    rec.second_class = classes.second_class.count();
    rec.G = out.next.G;
    rec.hamiltonian_asymmetry = hamiltonian_asymmetry(out.next.G);
    trace.push_back(std::move(rec));

    state = std::move(out.next);
    // A pass that finds nothing new ends the loop unless the new level can
    // still be solved for some controls.
    if (after <= before && rank_tol(state.Rk, tol) == 0) break;
  }

  ReductionResult res;
  res.n = n;
  res.m = m;
  res.index_k = state.k;
  res.m_res = state.m_cur;
  res.feedtot = std::move(feedtot);
  res.solved_directions = std::move(solved);
  res.control_law = state.control_law;
  res.nofeed = state.residual_basis;

  // The incremental splits never bracket surviving first-class rows against
  // second-class rows from earlier passes, so the final union is split again.
  const ConstraintMatrix all =
      stack_independent(classes.first_class, classes.second_class, tol);
  classes = split_first_second(all, tol);
  res.extended = classes;
  res.rp = rank_tol(poisson_brackets(all, tol), tol);
  res.phi_first = strip_coisotropic(classes.first_class, tol);
  res.phi_second = strip_coisotropic(classes.second_class, tol);
  res.gauge_directions = hamiltonian_field_rows(classes.first_class);

  res.G = state.G;
  res.Z = state.Z;
  res.Ax = res.G.topLeftCorner(n, n);
  res.Ap = res.G.topRightCorner(n, n);
  res.Qx = res.G.bottomLeftCorner(n, n);
  res.Qp = res.G.bottomRightCorner(n, n);
  res.Bu = res.Z.topRows(n);
  res.Nu = res.Z.bottomRows(n);
  res.trace = std::move(trace);
  return res;
}

Matrix reinflated_constraints(const ReductionResult& result, Tolerance tol) {
  const int n = result.n;
  const int m = result.m;
  const int m_res = result.m_res;
  Matrix finals = vstack(result.phi_first, result.phi_second);
  if (finals.rows() == 0) finals.resize(0, 2 * n + m_res);

  Matrix rows(finals.rows() + result.feedtot.rows(), 2 * n + m);
  rows.topLeftCorner(finals.rows(), 2 * n) = finals.leftCols(2 * n);
  rows.topRightCorner(finals.rows(), m) = finals.rightCols(m_res) * result.nofeed;
  rows.bottomLeftCorner(result.feedtot.rows(), 2 * n) = -result.feedtot;
  rows.bottomRightCorner(result.feedtot.rows(), m) = result.solved_directions;
  return independent_rows(rows, tol);
}

}  // namespace singlq
