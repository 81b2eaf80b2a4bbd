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
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "singlq/hcapf.hpp"

namespace singlq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix M(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) M(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(M);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  }
  return Q;
}

// Uniform(-1, 1) entries, optionally symmetrized, scaled to spectral norm
// delta * rho.
Matrix bounded_noise(Eigen::Index rows, Eigen::Index cols, double delta,
                     bool symmetric, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix E(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) E(i, j) = entry(rng);
  if (symmetric) E = 0.5 * (E + E.transpose()).eval();
  const double rho = unit(rng);
  const double norm = spectral_norm(E);
  if (norm == 0.0) return Matrix::Zero(rows, cols);
  return E * (delta * rho / norm);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidShape, what);
}

}  // namespace

Family family_from_int(int id) {
  require(id >= 1 && id <= 3,
          "family must be 1, 2 or 3, got " + std::to_string(id));
  return static_cast<Family>(id);
}

LQProblem gen_exp1(int n, int r, int l, std::uint64_t seed) {
  require(n >= 1, "family 1 needs n >= 1");
  require(r >= 1 && r <= n, "family 1 needs 1 <= r <= n");
  require(l >= 0 && l <= n - r, "family 1 needs 0 <= l <= n - r");

  std::mt19937_64 rng(seed);
  LQProblem p;
  p.name = "exp1_n" + std::to_string(n) + "_r" + std::to_string(r) + "_l" +
           std::to_string(l);
  p.A = Matrix::Identity(n, n);
  p.B = random_orthogonal(n, rng);
  const Matrix U = random_orthogonal(n, rng);
  std::uniform_real_distribution<double> sval(1.0, 2.0);
  Vector s = Vector::Zero(n);
  for (int i = 0; i < r; ++i) s(i) = sval(rng);
  p.R = U.transpose() * s.asDiagonal() * U;
  p.R = (0.5 * (p.R + p.R.transpose())).eval();

  Vector d = Vector::LinSpaced(n, 1.0, static_cast<double>(n));
  p.Q = d.asDiagonal();
  // The first l diagonal entries are removed from the cross term, so the
  // hidden constraints leave exactly n - r - l controls undetermined.
  Vector d_rest = d;
  d_rest.head(l).setZero();
  const Matrix V = 0.5 * p.B.transpose() * d_rest.asDiagonal() * p.B;
  p.N = p.B * V;
  return p;
}

LQProblem gen_exp2(int n) {
  require(n >= 2, "family 2 needs n >= 2");
  LQProblem p;
  p.name = "exp2_n" + std::to_string(n);
  p.A = Matrix::Identity(n, n);
  p.Q = Matrix::Identity(n, n);
  p.B = Matrix::Ones(n, 1);
  p.N = Matrix::Zero(n, 1);
  p.R = Matrix::Zero(1, 1);
  return p;
}

LQProblem gen_exp3(int n) {
  require(n >= 2, "family 3 needs n >= 2");
  LQProblem p;
  p.name = "exp3_n" + std::to_string(n);
  p.A = Matrix::Zero(n, n);
  p.A.diagonal(1).setOnes();
  p.Q = p.A + p.A.transpose();
  p.B = Matrix::Ones(n, 1);
  p.N = p.B;
  p.R = Matrix::Zero(1, 1);
  return p;
}

LQProblem make_problem(const FamilyParams& params, std::uint64_t seed) {
  switch (params.family) {
    case Family::kLowRankCost:
      return gen_exp1(params.n, params.r, params.l, seed);
    case Family::kSumConstraint:
      return gen_exp2(params.n);
    case Family::kNilpotentChain:
      return gen_exp3(params.n);
  }
  throw Error(ErrorCode::kInvalidShape, "unknown family");
}

LQProblem perturb(const LQProblem& problem, double delta, std::uint64_t seed,
                  bool preserve_structure) {
  require(std::isfinite(delta) && delta >= 0.0,
          "delta must be finite and nonnegative");
  LQProblem out = problem;
  if (delta == 0.0) return out;

  std::mt19937_64 rng(seed);
  out.A += bounded_noise(problem.A.rows(), problem.A.cols(), delta, false, rng);
  out.B += bounded_noise(problem.B.rows(), problem.B.cols(), delta, false, rng);
  out.N += bounded_noise(problem.N.rows(), problem.N.cols(), delta, false, rng);
  if (preserve_structure) {
    out.Q = out.A + out.A.transpose();
  } else {
    out.Q += bounded_noise(problem.Q.rows(), problem.Q.cols(), delta, true, rng);
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, double delta, std::size_t index) {
  const auto bits = std::bit_cast<std::uint64_t>(delta);
  return splitmix64(seed ^ splitmix64(bits ^ splitmix64(index)));
}

namespace {

std::optional<double> angle_or_none(const Matrix& exact, const Matrix& other,
                                    Tolerance tol) {
  const int re = rank_tol(exact, tol);
  const int ro = rank_tol(other, tol);
  if (re == 0 && ro == 0) return 0.0;
  if (re == 0 || ro == 0 || exact.cols() != other.cols()) return std::nullopt;
  return subspace_angle(exact, other, tol);
}

}  // namespace

std::vector<ExperimentRecord> run_sweep(const FamilyParams& params,
                                        const std::vector<double>& deltas,
                                        std::uint64_t seed, Tolerance tol,
                                        const SweepOptions& options) {
  require(!deltas.empty(), "sweep needs at least one delta");
  for (double d : deltas) {
    require(std::isfinite(d) && d >= 0.0, "deltas must be finite and >= 0");
  }
  const LQProblem exact = make_problem(params, seed);
  const ReductionResult base = reduce(exact, tol);
  const Matrix base_space = reinflated_constraints(base, tol);
  const bool preserve = params.family == Family::kNilpotentChain;

  std::vector<ExperimentRecord> records(deltas.size());
  auto run_one = [&](std::size_t i) {
    ExperimentRecord rec;
    rec.n = params.n;
    rec.delta = deltas[i];
    rec.trial_seed = trial_seed(seed, deltas[i], i);
    const ReductionResult res =
        reduce(perturb(exact, deltas[i], rec.trial_seed, preserve), tol);
    rec.steps_exact = base.index_k;
    rec.steps = res.index_k;
    rec.m_exact = base.m_res;
    rec.m1 = res.m_res;
    rec.rp_exact = base.rp;
    rec.rp1 = res.rp;
    if (rec.m1 == rec.m_exact) {
      rec.alpha =
          angle_or_none(base_space, reinflated_constraints(res, tol), tol);
    }
    records[i] = rec;
  };

  const int workers = std::max(1, options.workers);
  if (workers == 1 || deltas.size() == 1) {
    for (std::size_t i = 0; i < deltas.size(); ++i) run_one(i);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < deltas.size(); i = next++) {
        try {
          run_one(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

double fit_loglog_slope(const std::vector<ExperimentRecord>& records) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& rec : records) {
    if (rec.alpha && *rec.alpha > 0.0 && rec.delta > 0.0) {
      xs.push_back(std::log10(rec.delta));
      ys.push_back(std::log10(*rec.alpha));
    }
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "slope fit needs two records with alpha > 0 and delta > 0");
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) {
    throw Error(ErrorCode::kInsufficientData,
                "slope fit needs at least two distinct deltas");
  }
  return sxy / sxx;
}

}  // namespace singlq
