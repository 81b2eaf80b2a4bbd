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

#include "singlq/hcapf.hpp"
#include "singlq/lq_model.hpp"

namespace singlq {

struct OracleResult {
  Matrix final_constraints;  // rows over (x, p, u)
  int index_k = 0;
};

/// Plain recursive constraint algorithm on the original dynamics.
///
/// Starting from [S1 | -R], each pass keeps the constraint combinations that
/// do not involve u and differentiates them along G0 (x; p) + Z0 u. The
/// count stops when a pass adds nothing.
OracleResult recursive_reduce(const LQProblem& problem, Tolerance tol);

/// Largest principal angle between the oracle subspace and the re-inflated
/// hcapf subspace. Two empty subspaces compare as 0. Throws
/// DimensionMismatch when the dimensions of the two subspaces differ.
double compare_final_subspaces(const OracleResult& a, const ReductionResult& b,
                               Tolerance tol);

}  // namespace singlq
