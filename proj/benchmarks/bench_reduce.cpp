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

// Wall-clock comparison of the feedback reduction against the brute-force
// oracle on the generated families.

#include <benchmark/benchmark.h>

#include "singlq/experiments.hpp"
#include "singlq/hcapf.hpp"
#include "singlq/oracle.hpp"

namespace {

constexpr double kTolValue = 1e-6;

void BM_ReduceLowRank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const singlq::LQProblem p = singlq::gen_exp1(n, n / 2, n / 8, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(singlq::reduce(p, singlq::Tolerance(kTolValue)));
  }
}

void BM_OracleLowRank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const singlq::LQProblem p = singlq::gen_exp1(n, n / 2, n / 8, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        singlq::recursive_reduce(p, singlq::Tolerance(kTolValue)));
  }
}

void BM_ReduceSum(benchmark::State& state) {
  const singlq::LQProblem p =
      singlq::gen_exp2(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(singlq::reduce(p, singlq::Tolerance(kTolValue)));
  }
}

void BM_OracleSum(benchmark::State& state) {
  const singlq::LQProblem p =
      singlq::gen_exp2(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        singlq::recursive_reduce(p, singlq::Tolerance(kTolValue)));
  }
}

void BM_ReduceChain(benchmark::State& state) {
  const singlq::LQProblem p =
      singlq::gen_exp3(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(singlq::reduce(p, singlq::Tolerance(kTolValue)));
  }
}

}  // namespace

BENCHMARK(BM_ReduceLowRank)->Arg(16)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleLowRank)->Arg(16)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReduceSum)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSum)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReduceChain)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
