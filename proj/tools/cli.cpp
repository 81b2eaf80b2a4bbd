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

#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "report_io.hpp"
#include "singlq/oracle.hpp"

namespace singlq::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string path;
  std::string against;
  double tol = Tolerance::kDefault;
  std::uint64_t seed = 0;
  std::string deltas = "1e-12..1e-8";
  int family = 0;
  int n = 0;
  int r = -1;
  int l = -1;
  int workers = 1;
  std::string format;
};

void add_tol(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol", o.tol, "absolute singular value threshold")
      ->capture_default_str();
}

int cmd_reduce(const Options& o, std::ostream& out) {
  if (!o.format.empty() && o.format != "json") {
    throw io::InputError("reduce only writes --format json");
  }
  const Tolerance tol(o.tol);
  const LQProblem problem = io::load_problem(o.path);
  const ReductionResult result = reduce(problem, tol);
  out << io::render_report(result, problem.name, tol.value()).dump(2) << "\n";
  return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  if (!o.format.empty() && o.format != "json") {
    throw io::InputError("oracle only writes --format json");
  }
  const Tolerance tol(o.tol);
  const LQProblem problem = io::load_problem(o.path);
  const LQProblem reference =
      o.against.empty() ? problem : io::load_problem(o.against);
  const ReductionResult result = reduce(problem, tol);
  const OracleResult oracle = recursive_reduce(reference, tol);

  json doc;
  doc["name"] = problem.name;
  doc["tol"] = tol.value();
  doc["index_k_reduce"] = result.index_k;
  doc["index_k_oracle"] = oracle.index_k;
  std::optional<double> angle;
  if (reference.n() == problem.n() && reference.m() == problem.m()) {
    try {
      angle = compare_final_subspaces(oracle, result, tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDimensionMismatch) throw;
    }
  }
  doc["angle"] = angle ? json(*angle) : json("not computable");
  doc["oracle_constraints"] = io::matrix_to_json(oracle.final_constraints);
  doc["report"] = io::render_report(result, problem.name, tol.value());
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_experiment(const Options& o, std::ostream& out) {
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format != "csv" && format != "json") {
    throw io::InputError("--format must be csv or json");
  }
  const Tolerance tol(o.tol);
  FamilyParams params;
  params.family = family_from_int(o.family);
  params.n = o.n;
  if (params.family == Family::kLowRankCost) {
    if (o.r < 0 || o.l < 0) throw io::InputError("family 1 needs --r and --l");
    params.r = o.r;
    params.l = o.l;
  }
  const std::vector<double> deltas = io::parse_deltas(o.deltas);
  SweepOptions sweep;
  sweep.workers = o.workers;
  const auto records = run_sweep(params, deltas, o.seed, tol, sweep);

  io::SweepHeader header{o.family, o.n, params.r, params.l, o.seed,
                         tol.value()};
  if (format == "csv") {
    out << io::render_csv(header, records);
  } else {
    out << io::render_sweep_json(header, records).dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Reduction of singular linear-quadratic optimal control problems",
               "singlq"};
  app.require_subcommand(1);

  auto* red = app.add_subcommand("reduce", "reduce a problem file");
  red->add_option("path", o.path, "problem JSON file")->required();
  add_tol(red, o);
  red->add_option("--format", o.format, "json");

  auto* ora = app.add_subcommand(
      "oracle", "reduce a problem and check it against the plain recursion");
  ora->add_option("path", o.path, "problem JSON file")->required();
  ora->add_option("--against", o.against,
                  "run the plain recursion on this file instead");
  add_tol(ora, o);
  ora->add_option("--format", o.format, "json");

  auto* exp = app.add_subcommand("experiment", "perturbation sweep");
  exp->add_option("--family", o.family, "1, 2 or 3")->required();
  exp->add_option("--n", o.n, "state dimension")->required();
  exp->add_option("--r", o.r, "rank of R (family 1)");
  exp->add_option("--l", o.l, "hidden constraint count (family 1)");
  exp->add_option("--deltas", o.deltas,
                  "comma list; lo..hi expands to powers of ten")
      ->capture_default_str();
  exp->add_option("--seed", o.seed, "base seed")->capture_default_str();
  exp->add_option("--workers", o.workers, "threads for the sweep")
      ->capture_default_str();
  add_tol(exp, o);
  exp->add_option("--format", o.format, "csv or json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "singlq: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (red->parsed()) return cmd_reduce(o, out);
    if (ora->parsed()) return cmd_oracle(o, out);
    return cmd_experiment(o, out);
  } catch (const io::InputError& e) {
    err << "singlq: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "singlq: " << e.what() << "\n";
    return e.code() == ErrorCode::kNonConvergence ? kExitNonConvergence
                                                  : kExitInput;
  } catch (const std::exception& e) {
    err << "singlq: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace singlq::cli
