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

#include "singlq/classification.hpp"

namespace singlq {

Matrix poisson_brackets(const ConstraintMatrix& phi, Tolerance tol) {
  const Eigen::Index p = phi.count();
  if (p == 0) return Matrix(0, 0);
  if (rank_tol(phi.rows(), tol) == 0) return Matrix::Zero(p, p);
  Matrix poi = phi.x_block() * phi.p_block().transpose() -
               phi.p_block() * phi.x_block().transpose();
  if (phi.m_cur() > 0) {
    poi += phi.u_block() * phi.v_block().transpose() -
           phi.v_block() * phi.u_block().transpose();
  }
  return 0.5 * (poi - poi.transpose());
}

ClassifiedConstraints split_first_second(const ConstraintMatrix& phi,
                                         Tolerance tol) {
  const KernelSplit ker = numerical_ker(poisson_brackets(phi, tol), tol);
  const int n = phi.n();
  const int m = phi.m_cur();
  return {ConstraintMatrix(ker.v.transpose() * phi.rows(), n, m),
          ConstraintMatrix(ker.w.transpose() * phi.rows(), n, m)};
}

ClassifiedConstraints classify_with_new_rows(
    const ClassifiedConstraints& previous, const ConstraintMatrix& new_rows,
    Tolerance tol, ClassificationMode mode) {
  if (mode == ClassificationMode::kFull) {
    const ConstraintMatrix all = stack_independent(
        stack_independent(previous.first_class, previous.second_class, tol),
        new_rows, tol);
    return split_first_second(all, tol);
  }
  // Second-class rows already found stay second class. Only the retained
  // first-class rows are bracketed against the new ones.
  const ConstraintMatrix candidates =
      stack_independent(previous.first_class, new_rows, tol);
  ClassifiedConstraints split = split_first_second(candidates, tol);
  split.second_class =
      stack_independent(previous.second_class, split.second_class, tol);
  return split;
}

}  // namespace singlq
