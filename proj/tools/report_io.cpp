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

#include "report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace singlq::io {

using nlohmann::json;

namespace {

std::string quoted(const std::string& key) { return "\"" + key + "\""; }

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& token) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw InputError("not a finite number: \"" + token + "\"");
  }
  return value;
}

int power_of_ten(double value) {
  const double e = std::log10(value);
  const double rounded = std::round(e);
  if (!(value > 0.0) || std::abs(e - rounded) > 1e-9) {
    throw InputError("range endpoints must be powers of ten, got " +
                     format_double(value));
  }
  return static_cast<int>(rounded);
}

int get_int(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer()) {
    throw InputError("missing or non-integer key " + quoted(key));
  }
  return doc.at(key).get<int>();
}

}  // namespace

json matrix_to_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& value, const std::string& key,
                        Eigen::Index cols_if_empty) {
  if (!value.is_array()) {
    throw InputError(quoted(key) + " must be an array of arrays");
  }
  const auto rows = static_cast<Eigen::Index>(value.size());
  if (rows == 0) return Matrix(0, cols_if_empty);
  Eigen::Index cols = -1;
  Matrix M;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = value[static_cast<std::size_t>(i)];
    if (!row.is_array()) {
      throw InputError(quoted(key) + ": row " + std::to_string(i) +
                       " is not an array");
    }
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      M.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError(quoted(key) + " is not rectangular: row " +
                       std::to_string(i) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(cols));
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      const json& entry = row[static_cast<std::size_t>(j)];
      if (!entry.is_number()) {
        throw InputError(quoted(key) + ": entry (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") is not a number");
      }
      const double v = entry.get<double>();
      if (!std::isfinite(v)) {
        throw InputError(quoted(key) + ": entry (" + std::to_string(i) + ", " +
                         std::to_string(j) + ") is not finite");
      }
      M(i, j) = v;
    }
  }
  return M;
}

LQProblem parse_problem(const json& doc) {
  if (!doc.is_object()) throw InputError("problem file must be a JSON object");
  LQProblem p;
  auto read = [&](const char* key) {
    if (!doc.contains(key)) throw InputError("missing key " + quoted(key));
    return matrix_from_json(doc.at(key), key, 0);
  };
  p.A = read("A");
  p.B = read("B");
  p.Q = read("Q");
  p.N = read("N");
  p.R = read("R");
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw InputError(quoted("name") + " must be a string");
    p.name = doc.at("name").get<std::string>();
  }
  return p;
}

LQProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
  return parse_problem(doc);
}

json problem_to_json(const LQProblem& problem) {
  json doc;
  if (!problem.name.empty()) doc["name"] = problem.name;
  doc["A"] = matrix_to_json(problem.A);
  doc["B"] = matrix_to_json(problem.B);
  doc["Q"] = matrix_to_json(problem.Q);
  doc["N"] = matrix_to_json(problem.N);
  doc["R"] = matrix_to_json(problem.R);
  return doc;
}

json render_report(const ReductionResult& r, const std::string& name,
                   double tol) {
  json doc;
  doc["name"] = name;
  doc["tol"] = tol;
  doc["n"] = r.n;
  doc["m"] = r.m;
  doc["index_k"] = r.index_k;
  doc["m_res"] = r.m_res;
  doc["rp"] = r.rp;
  doc["classification"] = {
      {"first_class_rows", r.phi_first.rows()},
      {"second_class_rows", r.phi_second.rows()},
      {"extended_first_class_rows", r.extended.first_class.count()},
      {"extended_second_class_rows", r.extended.second_class.count()},
  };
  doc["feedtot"] = matrix_to_json(r.feedtot);
  doc["solved_directions"] = matrix_to_json(r.solved_directions);
  doc["control_law"] = matrix_to_json(r.control_law);
  doc["nofeed"] = matrix_to_json(r.nofeed);
  doc["phi_first"] = matrix_to_json(r.phi_first);
  doc["phi_second"] = matrix_to_json(r.phi_second);
  doc["extended_first"] = matrix_to_json(r.extended.first_class.rows());
  doc["extended_second"] = matrix_to_json(r.extended.second_class.rows());
  doc["gauge_directions"] = matrix_to_json(r.gauge_directions);
  doc["G"] = matrix_to_json(r.G);
  doc["Z"] = matrix_to_json(r.Z);
  doc["Ax"] = matrix_to_json(r.Ax);
  doc["Ap"] = matrix_to_json(r.Ap);
  doc["Qx"] = matrix_to_json(r.Qx);
  doc["Qp"] = matrix_to_json(r.Qp);
  doc["Bu"] = matrix_to_json(r.Bu);
  doc["Nu"] = matrix_to_json(r.Nu);
  json trace = json::array();
  for (const auto& it : r.trace) {
    trace.push_back({{"k", it.k},
                     {"feedback_rank", it.feedback_rank},
                     {"m_cur", it.m_cur},
                     {"constraint_rank", it.constraint_rank},
                     {"first_class", it.first_class},
                     {"second_class", it.second_class},
                     {"hamiltonian_asymmetry", it.hamiltonian_asymmetry}});
  }
  doc["trace"] = std::move(trace);
  return doc;
}

ReductionResult parse_report(const json& doc) {
  if (!doc.is_object()) throw InputError("report must be a JSON object");
  ReductionResult r;
  r.n = get_int(doc, "n");
  r.m = get_int(doc, "m");
  r.index_k = get_int(doc, "index_k");
  r.m_res = get_int(doc, "m_res");
  r.rp = get_int(doc, "rp");
  const int n = r.n;
  const int m_res = r.m_res;
  auto mat = [&](const char* key, Eigen::Index cols) {
    if (!doc.contains(key)) throw InputError("missing key " + quoted(key));
    return matrix_from_json(doc.at(key), key, cols);
  };
  r.feedtot = mat("feedtot", 2 * n);
  r.solved_directions = mat("solved_directions", r.m);
  r.control_law = mat("control_law", 2 * n);
  r.nofeed = mat("nofeed", r.m);
  r.phi_first = mat("phi_first", 2 * n + m_res);
  r.phi_second = mat("phi_second", 2 * n + m_res);
  r.extended.first_class =
      ConstraintMatrix(mat("extended_first", 2 * n + 2 * m_res), n, m_res);
  r.extended.second_class =
      ConstraintMatrix(mat("extended_second", 2 * n + 2 * m_res), n, m_res);
  r.gauge_directions = mat("gauge_directions", 2 * n + 2 * m_res);
  r.G = mat("G", 2 * n);
  r.Z = mat("Z", m_res);
  r.Ax = mat("Ax", n);
  r.Ap = mat("Ap", n);
  r.Qx = mat("Qx", n);
  r.Qp = mat("Qp", n);
  r.Bu = mat("Bu", m_res);
  r.Nu = mat("Nu", m_res);
  if (doc.contains("trace")) {
    for (const json& it : doc.at("trace")) {
      IterationRecord rec;
      rec.k = get_int(it, "k");
      rec.feedback_rank = get_int(it, "feedback_rank");
      rec.m_cur = get_int(it, "m_cur");
      rec.constraint_rank = get_int(it, "constraint_rank");
      rec.first_class = get_int(it, "first_class");
      rec.second_class = get_int(it, "second_class");
      rec.hamiltonian_asymmetry = it.at("hamiltonian_asymmetry").get<double>();
      r.trace.push_back(std::move(rec));
    }
  }
  return r;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_alpha(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::scientific, 15);
  return std::string(buf, ptr);
}

namespace {

std::string header_line(const SweepHeader& h) {
  std::ostringstream os;
  os << "# singlq experiment family=" << h.family << " n=" << h.n;
  if (h.family == 1) os << " r=" << h.r << " l=" << h.l;
  os << " seed=" << h.seed << " tol=" << format_double(h.tol);
  return os.str();
}

}  // namespace

std::string render_csv(const SweepHeader& header,
                       const std::vector<ExperimentRecord>& records) {
  std::string out = header_line(header) + "\n";
  out += "n,delta,steps_exact,steps,m,m1,rp,rp1,alpha\n";
  int computable = 0;
  for (const auto& rec : records) {
    out += std::to_string(rec.n) + "," + format_double(rec.delta) + "," +
           std::to_string(rec.steps_exact) + "," + std::to_string(rec.steps) +
           "," + std::to_string(rec.m_exact) + "," + std::to_string(rec.m1) +
           "," + std::to_string(rec.rp_exact) + "," + std::to_string(rec.rp1) +
           ",";
    if (rec.alpha) {
      out += format_alpha(*rec.alpha);
      ++computable;
    } else {
      out += "not_computable";
    }
    out += "\n";
  }
  if (computable >= 2) {
    try {
      out += "# slope=" + format_double(fit_loglog_slope(records)) + "\n";
    } catch (const Error&) {
      // Every computable alpha was zero; there is no line to fit.
    }
  }
  return out;
}

json render_sweep_json(const SweepHeader& header,
                       const std::vector<ExperimentRecord>& records) {
  json doc;
  doc["family"] = header.family;
  doc["n"] = header.n;
  if (header.family == 1) {
    doc["r"] = header.r;
    doc["l"] = header.l;
  }
  doc["seed"] = header.seed;
  doc["tol"] = header.tol;
  json rows = json::array();
  for (const auto& rec : records) {
    json row = {{"n", rec.n},
                {"delta", rec.delta},
                {"steps_exact", rec.steps_exact},
                {"steps", rec.steps},
                {"m", rec.m_exact},
                {"m1", rec.m1},
                {"rp", rec.rp_exact},
                {"rp1", rec.rp1},
                {"trial_seed", rec.trial_seed}};
    row["alpha"] = rec.alpha ? json(*rec.alpha) : json("not_computable");
    rows.push_back(std::move(row));
  }
  doc["records"] = std::move(rows);
  try {
    doc["slope"] = fit_loglog_slope(records);
  } catch (const Error&) {
    doc["slope"] = nullptr;
  }
  return doc;
}

std::vector<double> parse_deltas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw InputError("empty item in --deltas");
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_number(item));
      continue;
    }
    const int lo = power_of_ten(parse_number(trim(item.substr(0, dots))));
    const int hi = power_of_ten(parse_number(trim(item.substr(dots + 2))));
    if (lo > hi) throw InputError("empty range \"" + item + "\" in --deltas");
    for (int e = lo; e <= hi; ++e) {
      out.push_back(parse_number("1e" + std::to_string(e)));
    }
  }
  if (out.empty()) throw InputError("--deltas needs at least one value");
  for (double d : out) {
    if (d < 0.0) throw InputError("--deltas values must be >= 0");
  }
  return out;
}

}  // namespace singlq::io
