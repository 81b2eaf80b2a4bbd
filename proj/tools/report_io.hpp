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
#include <string>
#include <vector>

#include "json.hpp"
#include "singlq/experiments.hpp"
#include "singlq/hcapf.hpp"
#include "singlq/lq_model.hpp"

namespace singlq::io {

/// Raised for malformed input documents. The message names the field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads keys "A", "B", "Q", "N", "R" and the optional "name". Shapes are
/// not cross-checked here; validate() does that.
LQProblem parse_problem(const nlohmann::json& doc);
LQProblem load_problem(const std::string& path);
nlohmann::json problem_to_json(const LQProblem& problem);

nlohmann::json matrix_to_json(const Matrix& M);
/// cols_if_empty gives the column count of a matrix written as [].
Matrix matrix_from_json(const nlohmann::json& value, const std::string& key,
                        Eigen::Index cols_if_empty);

nlohmann::json render_report(const ReductionResult& result,
                             const std::string& name, double tol);
/// Inverse of render_report for every count and matrix it writes. The
/// per-pass drift matrices of the trace are not part of the document.
ReductionResult parse_report(const nlohmann::json& doc);

struct SweepHeader {
  int family = 0;
  int n = 0;
  int r = 0;
  int l = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
};

/// Shortest decimal text that reads back as the same double.
std::string format_double(double value);
/// Sixteen significant digits in scientific notation.
std::string format_alpha(double value);

std::string render_csv(const SweepHeader& header,
                       const std::vector<ExperimentRecord>& records);
nlohmann::json render_sweep_json(const SweepHeader& header,
                                 const std::vector<ExperimentRecord>& records);

/// Comma separated values. An item "lo..hi" expands to the powers of ten
/// from lo to hi.
std::vector<double> parse_deltas(const std::string& text);

}  // namespace singlq::io
