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

#include <random>

#include <gtest/gtest.h>

#include "singlq/experiments.hpp"
#include "test_support.hpp"

namespace singlq {
namespace {

const Tolerance kTol(1e-6);

LQProblem scalar(double a, double b, double q, double nu, double r) {
  LQProblem p;
  p.A = Matrix::Constant(1, 1, a);
  p.B = Matrix::Constant(1, 1, b);
  p.Q = Matrix::Constant(1, 1, q);
  p.N = Matrix::Constant(1, 1, nu);
  p.R = Matrix::Constant(1, 1, r);
  return p;
}

TEST(RecursiveReduceTest, RegularKeepsPrimaryConstraints) {
  std::mt19937_64 rng(4);
  const LQProblem p = testing::random_regular_problem(3, 2, rng);
  const OracleResult o = recursive_reduce(p, kTol);
  EXPECT_EQ(o.index_k, 1);
  Matrix primary(2, 8);
  primary << -p.N.transpose(), p.B.transpose(), -p.R;
  EXPECT_LT(subspace_angle(o.final_constraints, primary, kTol), 1e-12);
  EXPECT_LT(compare_final_subspaces(o, reduce(p, kTol), kTol), 1e-10);
}

TEST(RecursiveReduceTest, SingularScalarChain) {
  const LQProblem p = scalar(0, 1, 1, 0, 0);
  const OracleResult o = recursive_reduce(p, kTol);
  EXPECT_EQ(o.index_k, 3);
  EXPECT_EQ(o.final_constraints.rows(), 3);
  EXPECT_LT(compare_final_subspaces(o, reduce(p, kTol), kTol), 1e-8);
}

TEST(RecursiveReduceTest, SumFamily) {
  const OracleResult o = recursive_reduce(gen_exp2(3), kTol);
  Matrix expected = Matrix::Zero(3, 7);
  expected.block(0, 0, 1, 3).setOnes();
  expected.block(1, 3, 1, 3).setOnes();
  expected(2, 6) = 1;
  EXPECT_EQ(o.index_k, 3);
  EXPECT_LT(subspace_angle(o.final_constraints, expected, kTol), 1e-12);
}

TEST(RecursiveReduceTest, NilpotentChainIndex) {
  for (int n : {2, 4, 7}) {
    EXPECT_EQ(recursive_reduce(gen_exp3(n), kTol).index_k, n) << n;
  }
}

TEST(CompareTest, DetectsDifferentProblems) {
  // p - u = 0 against x - u = 0: the lines meet at 60 degrees.
  const LQProblem a = scalar(0, 1, 0, 0, 1);
  const LQProblem b = scalar(0, 0, 0, -1, 1);
  const double angle = compare_final_subspaces(recursive_reduce(a, kTol),
                                               reduce(b, kTol), kTol);
  EXPECT_NEAR(angle, std::acos(0.5), 1e-12);
}

TEST(CompareTest, DimensionMismatch) {
  const OracleResult o = recursive_reduce(scalar(0, 1, 1, 0, 0), kTol);
  const ReductionResult r = reduce(scalar(0, 1, 1, 0, 1), kTol);
  try {
    compare_final_subspaces(o, r, kTol);
    FAIL() << "expected DimensionMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  const ReductionResult other = reduce(gen_exp2(2), kTol);
  EXPECT_THROW(compare_final_subspaces(o, other, kTol), Error);
}

TEST(CompareTest, EmptySubspacesAgree) {
  const LQProblem p = scalar(1, 0, 1, 0, 0);
  EXPECT_EQ(compare_final_subspaces(recursive_reduce(p, kTol), reduce(p, kTol), kTol), 0.0);
}

class EquivalenceTest : public ::testing::TestWithParam<int> {};

TEST_P(EquivalenceTest, OracleAndReductionAgree) {
  std::mt19937_64 rng(GetParam());
  const int n = 2 + GetParam() % 5;
  const int m = 1 + (GetParam() / 5) % 4;
  const LQProblem p = testing::random_problem(n, m, true, rng);
  const OracleResult o = recursive_reduce(p, kTol);
  const ReductionResult r = reduce(p, kTol);
  EXPECT_EQ(o.index_k, r.index_k);
  EXPECT_LT(compare_final_subspaces(o, r, kTol), 1e-8);
}

TEST_P(EquivalenceTest, DegenerateCouplings) {
  // Zero cross term and a control that never enters the dynamics.
  std::mt19937_64 rng(300 + GetParam());
  const int n = 2 + GetParam() % 4;
  const int m = 2 + GetParam() % 2;
  LQProblem p = testing::random_problem(n, m, true, rng);
  p.N.setZero();
  p.B.col(0).setZero();
  const OracleResult o = recursive_reduce(p, kTol);
  const ReductionResult r = reduce(p, kTol);
  EXPECT_LT(compare_final_subspaces(o, r, kTol), 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Seeds, EquivalenceTest, ::testing::Range(0, 40));

}  // namespace
}  // namespace singlq
