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

#include "singlq/constraint_matrix.hpp"

#include <string>

namespace singlq {

ConstraintMatrix::ConstraintMatrix(Matrix rows, int n, int m_cur)
    : rows_(std::move(rows)), n_(n), m_cur_(m_cur) {
  if (n < 0 || m_cur < 0) {
    throw Error(ErrorCode::kDimensionMismatch, "negative block size");
  }
  if (rows_.rows() == 0) rows_.resize(0, 2 * n + 2 * m_cur);
  if (rows_.cols() != 2 * n + 2 * m_cur) {
    throw Error(ErrorCode::kDimensionMismatch,
                "constraint rows have " + std::to_string(rows_.cols()) +
                    " columns, layout needs " +
                    std::to_string(2 * n + 2 * m_cur));
  }
}

ConstraintMatrix ConstraintMatrix::empty(int n, int m_cur) {
  return ConstraintMatrix(Matrix(0, 2 * n + 2 * m_cur), n, m_cur);
}

ConstraintMatrix stack_independent(const ConstraintMatrix& top,
                                   const ConstraintMatrix& bottom,
                                   Tolerance tol) {
  if (top.n() != bottom.n() || top.m_cur() != bottom.m_cur()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "stacking constraint sets with different layouts");
  }
  return ConstraintMatrix(
      independent_rows(vstack(top.rows(), bottom.rows()), tol), top.n(),
      top.m_cur());
}

}  // namespace singlq
