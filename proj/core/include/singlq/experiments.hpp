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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "singlq/lq_model.hpp"

namespace singlq {

enum class Family : int {
  kLowRankCost = 1,     // A = I, orthogonal B, rank-r R
  kSumConstraint = 2,   // A = Q = I, B all ones, R = 0
  kNilpotentChain = 3,  // shift matrix A, B = N all ones, R = 0
};

/// Throws InvalidShape for ids other than 1, 2, 3.
Family family_from_int(int id);

struct FamilyParams {
  Family family = Family::kSumConstraint;
  int n = 0;
  int r = 0;  // family 1 only
  int l = 0;  // family 1 only
};

/// Family 1 with n states and n controls, R of rank r and l extra
/// constraints hidden in N. Residual controls after reduction: n - r - l.
/// Requires 1 <= r <= n and 0 <= l <= n - r.
LQProblem gen_exp1(int n, int r, int l, std::uint64_t seed);
LQProblem gen_exp2(int n);
LQProblem gen_exp3(int n);

/// Builds the family member described by params. seed is used by family 1.
LQProblem make_problem(const FamilyParams& params, std::uint64_t seed);

/// Adds seeded perturbations of spectral norm delta * rho, rho ~ U(0, 1),
/// to A, B, Q and N. The Q perturbation is symmetric. With
/// preserve_structure, Q is rebuilt as A~ + A~' instead. R is left alone.
LQProblem perturb(const LQProblem& problem, double delta, std::uint64_t seed,
                  bool preserve_structure);

struct ExperimentRecord {
  int n = 0;
  double delta = 0.0;
  int steps_exact = 0;
  int steps = 0;
  int m_exact = 0;
  int m1 = 0;
  int rp_exact = 0;
  int rp1 = 0;
  std::optional<double> alpha;  // empty when not computable
  std::uint64_t trial_seed = 0;
};

struct SweepOptions {
  /// Number of worker threads evaluating deltas. Results do not depend on it.
  int workers = 1;
};

/// Seed for the trial at position index with bound delta.
std::uint64_t trial_seed(std::uint64_t seed, double delta, std::size_t index);

/// One record per delta, in input order. Family 3 perturbs Q through A.
std::vector<ExperimentRecord> run_sweep(const FamilyParams& params,
                                        const std::vector<double>& deltas,
                                        std::uint64_t seed, Tolerance tol,
                                        const SweepOptions& options = {});

/// OLS slope of log10(alpha) against log10(delta) over records with
/// alpha > 0 and delta > 0. Throws InsufficientData with fewer than two
/// such records or when all their deltas coincide.
double fit_loglog_slope(const std::vector<ExperimentRecord>& records);

}  // namespace singlq
