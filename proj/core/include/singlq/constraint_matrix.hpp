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

#include "singlq/linalg.hpp"

namespace singlq {

/// Linear constraints over the extended coordinates. Each row holds the
/// coefficients of one constraint laid out as [x (n) | p (n) | u (m) | v (m)].
class ConstraintMatrix {
 public:
  ConstraintMatrix() = default;
  /// Throws DimensionMismatch unless rows.cols() == 2n + 2m.
  ConstraintMatrix(Matrix rows, int n, int m_cur);

  /// An empty constraint set with the given layout.
  static ConstraintMatrix empty(int n, int m_cur);

  const Matrix& rows() const { return rows_; }
  int n() const { return n_; }
  int m_cur() const { return m_cur_; }
  int count() const { return static_cast<int>(rows_.rows()); }
  int cols() const { return 2 * n_ + 2 * m_cur_; }

  auto x_block() const { return rows_.leftCols(n_); }
  auto p_block() const { return rows_.middleCols(n_, n_); }
  auto xp_block() const { return rows_.leftCols(2 * n_); }
  auto u_block() const { return rows_.middleCols(2 * n_, m_cur_); }
  auto v_block() const { return rows_.rightCols(m_cur_); }

 private:
  Matrix rows_ = Matrix(0, 0);
  int n_ = 0;
  int m_cur_ = 0;
};

/// Stacks two constraint sets with the same layout and re-independentizes.
ConstraintMatrix stack_independent(const ConstraintMatrix& top,
                                   const ConstraintMatrix& bottom,
                                   Tolerance tol);

}  // namespace singlq
