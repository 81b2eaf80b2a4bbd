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

#include "singlq/experiments.hpp"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "singlq/hcapf.hpp"
#include "singlq/oracle.hpp"

namespace singlq {
namespace {

const Tolerance kTol(1e-6);

std::vector<double> decades(int lo, int hi) {
  std::vector<double> out;
  for (int e = lo; e <= hi; ++e) out.push_back(std::pow(10.0, e));
  return out;
}

TEST(GenExp1Test, ShapesAndStructure) {
  const LQProblem p = gen_exp1(8, 5, 2, 3);
  EXPECT_NO_THROW(validate(p));
  EXPECT_EQ(p.n(), 8);
  EXPECT_EQ(p.m(), 8);
  EXPECT_LT((p.B.transpose() * p.B - Matrix::Identity(8, 8)).norm(), 1e-12);
  EXPECT_EQ(rank_tol(p.R, kTol), 5);
  EXPECT_EQ(p.A, Matrix::Identity(8, 8));
}

TEST(GenExp1Test, ResidualControlsSmall) {
  const LQProblem p = gen_exp1(8, 5, 2, 0);
  const ReductionResult r = reduce(p, kTol);
  EXPECT_EQ(r.m_res, 1);
  EXPECT_EQ(r.index_k, 3);
  EXPECT_LT(compare_final_subspaces(recursive_reduce(p, kTol), r, kTol), 1e-8);
}

TEST(GenExp1Test, ResidualControlsFollowFormula) {
  for (auto [n, r, l] : {std::tuple{12, 6, 3}, {20, 10, 5}, {10, 3, 0}}) {
    const ReductionResult res = reduce(gen_exp1(n, r, l, 1), kTol);
    EXPECT_EQ(res.m_res, n - (r + l)) << n << " " << r << " " << l;
  }
}

TEST(GenExp1Test, FullRankIsRegular) {
  const ReductionResult r = reduce(gen_exp1(6, 6, 0, 2), kTol);
  EXPECT_EQ(r.index_k, 1);
  EXPECT_EQ(r.m_res, 0);
}

TEST(GenExp1Test, LargeCaseFromTable) {
  const ReductionResult r = reduce(gen_exp1(100, 80, 5, 0), kTol);
  EXPECT_EQ(r.index_k, 3);
  EXPECT_EQ(r.m_res, 15);
}

TEST(GenExp1Test, InvalidShapes) {
  EXPECT_THROW(gen_exp1(5, 0, 1, 0), Error);
  EXPECT_THROW(gen_exp1(5, 6, 0, 0), Error);
  EXPECT_THROW(gen_exp1(5, 3, 3, 0), Error);
}

TEST(GenExp2Test, StructureIsSizeIndependent) {
  for (int n : {2, 3, 12}) {
    const ReductionResult r = reduce(gen_exp2(n), kTol);
    EXPECT_EQ(r.index_k, 3) << n;
    EXPECT_EQ(r.m_res, 0) << n;
    EXPECT_EQ(r.rp, 2) << n;
    EXPECT_EQ(recursive_reduce(gen_exp2(n), kTol).index_k, 3) << n;
  }
  EXPECT_THROW(gen_exp2(1), Error);
}

TEST(GenExp3Test, IndexGrowsWithSize) {
  for (int n : {2, 4, 9}) {
    const ReductionResult r = reduce(gen_exp3(n), kTol);
    EXPECT_EQ(r.index_k, n) << n;
    EXPECT_EQ(r.m_res, 1) << n;
    EXPECT_EQ(r.rp, 0) << n;
  }
  EXPECT_THROW(gen_exp3(1), Error);
}

TEST(PerturbTest, ZeroDeltaIsIdentity) {
  const LQProblem p = gen_exp2(4);
  const LQProblem q = perturb(p, 0.0, 9, false);
  EXPECT_EQ(p.A, q.A);
  EXPECT_EQ(p.B, q.B);
  EXPECT_EQ(p.Q, q.Q);
  EXPECT_EQ(p.N, q.N);
  EXPECT_EQ(p.R, q.R);
}

TEST(PerturbTest, Deterministic) {
  const LQProblem p = gen_exp1(6, 3, 1, 0);
  const LQProblem a = perturb(p, 1e-3, 42, false);
  const LQProblem b = perturb(p, 1e-3, 42, false);
  EXPECT_EQ(a.A, b.A);
  EXPECT_EQ(a.B, b.B);
  EXPECT_EQ(a.Q, b.Q);
  EXPECT_EQ(a.N, b.N);
  const LQProblem c = perturb(p, 1e-3, 43, false);
  EXPECT_NE(a.A, c.A);
}

TEST(PerturbTest, NormBoundAndSymmetry) {
  const LQProblem p = gen_exp2(6);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LQProblem q = perturb(p, 1e-10, seed, false);
    EXPECT_LE(spectral_norm(q.A - p.A), 1e-10);
    EXPECT_LE(spectral_norm(q.B - p.B), 1e-10);
    EXPECT_LE(spectral_norm(q.N - p.N), 1e-10);
    EXPECT_LE(spectral_norm(q.Q - p.Q), 1e-10);
    EXPECT_NO_THROW(validate(q));
  }
}

TEST(PerturbTest, PreserveStructureRebuildsQ) {
  const LQProblem p = gen_exp3(5);
  const LQProblem q = perturb(p, 1e-4, 3, true);
  EXPECT_EQ(q.Q, q.A + q.A.transpose());
  EXPECT_EQ(q.R, p.R);
}

TEST(PerturbTest, RejectsNegativeDelta) {
  EXPECT_THROW(perturb(gen_exp2(3), -1.0, 0, false), Error);
}

TEST(SweepTest, SumFamilyStableRegime) {
  const auto recs = run_sweep({Family::kSumConstraint, 50}, decades(-12, -8), 0, kTol);
  ASSERT_EQ(recs.size(), 5u);
  for (const auto& r : recs) {
    EXPECT_EQ(r.steps, 3);
    EXPECT_EQ(r.m1, 0);
    EXPECT_EQ(r.rp1, 2);
    ASSERT_TRUE(r.alpha.has_value());
    EXPECT_TRUE(std::isfinite(*r.alpha));
  }
  const double slope = fit_loglog_slope(recs);
  EXPECT_GE(slope, 0.9);
  EXPECT_LE(slope, 1.1);
}

TEST(SweepTest, NilpotentChainBreaksAtLargeDelta) {
  const auto recs = run_sweep({Family::kNilpotentChain, 10}, {1e-5}, 0, kTol);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_FALSE(recs[0].alpha.has_value());
  EXPECT_NE(recs[0].m1, recs[0].m_exact);
}

TEST(SweepTest, ZeroDeltaSelfComparison) {
  for (const FamilyParams& params :
       {FamilyParams{Family::kLowRankCost, 8, 5, 2},
        FamilyParams{Family::kSumConstraint, 5},
        FamilyParams{Family::kNilpotentChain, 5}}) {
    const auto recs = run_sweep(params, {0.0}, 0, kTol);
    ASSERT_TRUE(recs[0].alpha.has_value());
    EXPECT_LE(*recs[0].alpha, 1e-12);
  }
}

TEST(SweepTest, DeterministicAcrossWorkerCounts) {
  const FamilyParams params{Family::kLowRankCost, 10, 5, 2};
  const auto deltas = decades(-12, -6);
  const auto a = run_sweep(params, deltas, 5, kTol, {1});
  const auto b = run_sweep(params, deltas, 5, kTol, {3});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].steps, b[i].steps);
    EXPECT_EQ(a[i].m1, b[i].m1);
    EXPECT_EQ(a[i].rp1, b[i].rp1);
    EXPECT_EQ(a[i].alpha, b[i].alpha);
    EXPECT_EQ(a[i].trial_seed, b[i].trial_seed);
  }
}

TEST(SweepTest, MedianAlphaGrowsWithDelta) {
  const auto deltas = decades(-12, -8);
  std::vector<std::vector<double>> by_delta(deltas.size());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto recs = run_sweep({Family::kSumConstraint, 20}, deltas, seed, kTol);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      ASSERT_TRUE(recs[i].alpha.has_value());
      by_delta[i].push_back(*recs[i].alpha);
    }
  }
  double previous = 0.0;
  for (auto& v : by_delta) {
    std::sort(v.begin(), v.end());
    EXPECT_GT(v[v.size() / 2], previous);
    previous = v[v.size() / 2];
  }
}

TEST(SweepTest, RejectsBadInput) {
  EXPECT_THROW(run_sweep({Family::kSumConstraint, 5}, {}, 0, kTol), Error);
  EXPECT_THROW(run_sweep({Family::kSumConstraint, 5}, {-1.0}, 0, kTol), Error);
  EXPECT_THROW(family_from_int(4), Error);
}

ExperimentRecord synthetic(double delta, double alpha) {
  ExperimentRecord r;
  r.delta = delta;
  r.alpha = alpha;
  return r;
}

TEST(SlopeTest, ExactLinear) {
  std::vector<ExperimentRecord> recs;
  for (double d : decades(-12, -8)) recs.push_back(synthetic(d, d));
  EXPECT_NEAR(fit_loglog_slope(recs), 1.0, 1e-12);
}

TEST(SlopeTest, ExactQuadratic) {
  std::vector<ExperimentRecord> recs;
  for (double d : decades(-6, -2)) recs.push_back(synthetic(d, 10 * d * d));
  EXPECT_NEAR(fit_loglog_slope(recs), 2.0, 1e-12);
}

TEST(SlopeTest, SkipsNotComputableRows) {
  std::vector<ExperimentRecord> recs{synthetic(1e-3, 1e-3), synthetic(1e-2, 1e-2)};
  ExperimentRecord missing;
  missing.delta = 1e-1;
  recs.push_back(missing);
  EXPECT_NEAR(fit_loglog_slope(recs), 1.0, 1e-12);
}

TEST(SlopeTest, InsufficientData) {
  try {
    fit_loglog_slope({synthetic(1e-3, 1e-3)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
  EXPECT_THROW(fit_loglog_slope({synthetic(1e-3, 1e-3), synthetic(1e-3, 2e-3)}), Error);
}

}  // namespace
}  // namespace singlq
