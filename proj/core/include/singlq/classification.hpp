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

#include "singlq/constraint_matrix.hpp"

namespace singlq {

/// POI(i, j) = {phi_i, phi_j} under {x_i, p_i} = 1 and {u_a, v_a} = 1.
///
/// The result is antisymmetrized. An empty set gives a 0 x 0 matrix and a
/// set of numerically zero rows gives the zero matrix of matching size.
Matrix poisson_brackets(const ConstraintMatrix& phi, Tolerance tol);

struct ClassifiedConstraints {
  ConstraintMatrix first_class;
  ConstraintMatrix second_class;
};

/// Splits phi along the kernel of its Poisson matrix: rows v'phi are first
/// class, rows w'phi second class.
ClassifiedConstraints split_first_second(const ConstraintMatrix& phi,
                                         Tolerance tol);

enum class ClassificationMode {
  /// Brackets only the retained first-class rows and the new rows.
  kIncremental,
  /// Reclassifies the whole constraint set from scratch on every pass.
  kFull,
};

/// One classification pass of the reduction loop. previous must already be
/// a classified pair; new_rows shares its layout.
ClassifiedConstraints classify_with_new_rows(
    const ClassifiedConstraints& previous, const ConstraintMatrix& new_rows,
    Tolerance tol, ClassificationMode mode);

}  // namespace singlq
