// Copyright 2026 The ciapprox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end for the ciapprox library.
//
// Exit codes: 0 when every answer is positive, 2 when some answer is
// negative, 1 on any error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "ciapprox/distribution.hpp"
#include "ciapprox/errors.hpp"
#include "ciapprox/graphsep.hpp"
#include "ciapprox/problem.hpp"

namespace {

using ciapprox::Engine;
using json = nlohmann::ordered_json;

constexpr int kExitPositive = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin),
            std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw ciapprox::Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

json result_json(const ciapprox::QueryResult& r) {
  json j = {{"query", r.query},
            {"mode", ciapprox::engine_name(r.engine)},
            {"verdict", r.verdict},
            {"positive", r.positive}};
  if (r.lambda) j["lambda"] = *r.lambda;
  if (r.bound) j["bound"] = *r.bound;
  if (r.certificate) j["certificate"] = lines_of(*r.certificate);
  if (r.witness) j["witness"] = *r.witness;
  if (r.derivation) j["derivation"] = *r.derivation;
  return j;
}

void print_result(const ciapprox::QueryResult& r) {
  std::cout << r.query << ": " << r.verdict;
  if (r.bound) std::cout << " (lambda " << *r.lambda << ", bound " << *r.bound << ")";
  std::cout << '\n';
  if (r.derivation) std::cout << "  by " << *r.derivation << '\n';
  if (r.witness) std::cout << "  witness: " << *r.witness << '\n';
  if (r.certificate) {
    for (const auto& line : lines_of(*r.certificate)) {
      std::cout << "  " << line << '\n';
    }
  }
}

int run_problem(ciapprox::ProblemFile p, bool as_json) {
  const ciapprox::Report report = ciapprox::run(p);
  for (const auto& r : report.results) {
    if (as_json) {
      std::cout << result_json(r).dump() << '\n';
    } else {
      print_result(r);
    }
  }
  return report.exit_code();
}

int run_separation(const std::string& graph_path, const std::string& query,
                   bool directed, bool as_json) {
  const ciapprox::GraphFile g = ciapprox::parse_graph(read_input(graph_path));
  if (directed && !g.dag) throw ciapprox::Error("dsep needs a DAG file");
  if (!directed && !g.ugraph) {
    throw ciapprox::Error("usep needs an undirected graph file");
  }
  const ciapprox::CiTriple t = ciapprox::parse_statement(query, g.vars);
  if (t.trivial()) throw ciapprox::Error("query is trivial");
  const bool sep = directed ? ciapprox::d_separates(*g.dag, t.x, t.y, t.z)
                            : ciapprox::u_separates(*g.ugraph, t.x, t.y, t.z);
  const std::string verdict = sep ? "separated" : "not separated";
  if (as_json) {
    std::cout << json{{"query", ciapprox::format_triple(t, g.vars)},
                      {"verdict", verdict},
                      {"positive", sep}}
                     .dump()
              << '\n';
  } else {
    std::cout << ciapprox::format_triple(t, g.vars) << ": " << verdict << '\n';
  }
  return sep ? kExitPositive : kExitNegative;
}

int run_basis(const std::string& graph_path, bool as_json) {
  const ciapprox::GraphFile g = ciapprox::parse_graph(read_input(graph_path));
  if (!g.dag) throw ciapprox::Error("basis needs a DAG file");
  const ciapprox::CiSet basis = ciapprox::recursive_basis(*g.dag);
  std::vector<std::string> rows;
  for (const auto& t : basis) rows.push_back(ciapprox::format_triple(t, g.vars));
  if (as_json) {
    std::cout << json{{"basis", rows}}.dump() << '\n';
  } else {
    for (const auto& r : rows) std::cout << r << '\n';
  }
  return kExitPositive;
}

int run_entropy(const std::string& path, bool as_json) {
  ciapprox::DistributionFile f =
      ciapprox::parse_distribution(read_input(path));
  ciapprox::VarNames names;
  ciapprox::FloatEntropy h;
  if (f.groups.empty()) {
    names = f.base.names();
    h = ciapprox::entropy_vector(f.base);
  } else {
    names = f.group_names;
    const ciapprox::GroupedView view(f.base, f.group_names, f.groups);
    h = ciapprox::entropy_vector(view);
  }
  for (ciapprox::VarSet::Bits s = 1; s < (1u << h.ambient()); ++s) {
    const std::string label = ciapprox::format_set(ciapprox::VarSet(s), names);
    const double v = h(ciapprox::VarSet(s));
    if (as_json) {
      std::cout << json{{"subset", label}, {"h", v}}.dump() << '\n';
    } else {
      std::cout << "h(" << label << ") = " << num(v) << '\n';
    }
  }
  return kExitPositive;
}

struct CounterexampleRow {
  double x, y;
  double i_ab_c, i_ac_b, i_a_bc;
  double closed_sum, closed_i_a_bc;
  double ratio, max_error;
  bool strictly_positive;
};

CounterexampleRow counterexample_row(double x, double y) {
  using ciapprox::CiTriple;
  using ciapprox::VarSet;
  const ciapprox::GroupedView view = ciapprox::intersection_counterexample(x, y);
  const ciapprox::FloatEntropy h = ciapprox::entropy_vector(view);
  const VarSet a = VarSet::single(0), b = VarSet::single(1),
               c = VarSet::single(2);
  CounterexampleRow row{};
  row.x = x;
  row.y = y;
  row.i_ab_c = ciapprox::eval_mi(h, CiTriple{a, b, c});
  row.i_ac_b = ciapprox::eval_mi(h, CiTriple{a, c, b});
  row.i_a_bc = ciapprox::eval_mi(h, CiTriple{a, b | c, VarSet()});
  const auto forms = ciapprox::counterexample_closed_forms(x, y);
  row.closed_sum = 2 * forms.i_ab_given_c;
  row.closed_i_a_bc = forms.i_ab + forms.i_ab_given_c;
  row.ratio = row.i_a_bc / (row.i_ab_c + row.i_ac_b);
  row.max_error = std::max(std::abs(row.i_ab_c + row.i_ac_b - row.closed_sum),
                           std::abs(row.i_a_bc - row.closed_i_a_bc));
  row.strictly_positive = view.base().strictly_positive();
  return row;
}

json row_json(const CounterexampleRow& r) {
  return {{"x", r.x},
          {"y", r.y},
          {"i_ab_given_c", r.i_ab_c},
          {"i_ac_given_b", r.i_ac_b},
          {"sum", r.i_ab_c + r.i_ac_b},
          {"i_a_bc", r.i_a_bc},
          {"closed_sum", r.closed_sum},
          {"closed_i_a_bc", r.closed_i_a_bc},
          {"ratio", r.ratio},
          {"max_error", r.max_error},
          {"strictly_positive", r.strictly_positive}};
}

int run_counterexample(double x, double y, bool sweep,
                       const std::vector<double>& points,
                       const std::string& dump_path, bool as_json) {
  if (!dump_path.empty()) {
    std::ofstream out(dump_path);
    if (!out) throw ciapprox::Error("cannot write '" + dump_path + "'");
    out << ciapprox::dump_distribution(
        ciapprox::intersection_counterexample(x, y).base());
  }
  std::vector<CounterexampleRow> rows;
  if (sweep) {
    for (double t : points) rows.push_back(counterexample_row(t, t));
  } else {
    rows.push_back(counterexample_row(x, y));
  }
  if (as_json) {
    for (const auto& r : rows) std::cout << row_json(r).dump() << '\n';
    return kExitPositive;
  }
  if (sweep) {
    std::cout << "x,y,i_ab_given_c,i_ac_given_b,sum,i_a_bc,closed_sum,"
                 "closed_i_a_bc,ratio,max_error\n";
    for (const auto& r : rows) {
      std::cout << num(r.x) << ',' << num(r.y) << ',' << num(r.i_ab_c) << ','
                << num(r.i_ac_b) << ',' << num(r.i_ab_c + r.i_ac_b) << ','
                << num(r.i_a_bc) << ',' << num(r.closed_sum) << ','
                << num(r.closed_i_a_bc) << ',' << num(r.ratio) << ','
                << num(r.max_error) << '\n';
    }
    return kExitPositive;
  }
  const auto& r = rows.front();
  std::cout << "x = " << num(r.x) << ", y = " << num(r.y) << '\n'
            << "strictly positive: " << (r.strictly_positive ? "yes" : "no")
            << '\n'
            << "I(A;B|C) = " << num(r.i_ab_c) << '\n'
            << "I(A;C|B) = " << num(r.i_ac_b) << '\n'
            << "I(A;BC) = " << num(r.i_a_bc) << '\n'
            << "closed form I(A;B|C)+I(A;C|B) = " << num(r.closed_sum) << '\n'
            << "closed form I(A;BC) = " << num(r.closed_i_a_bc) << '\n'
            << "ratio = " << num(r.ratio) << '\n';
  return kExitPositive;
}

ciapprox::ProblemFile load_problem(const std::string& path) {
  return ciapprox::parse_problem(read_input(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and approximate implication of conditional independence"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit JSON lines");

  std::string problem_path;
  std::string graph_path;
  std::string query;
  std::string mode_text;
  std::string lambda_text;
  std::string kind_text;

  auto* run_cmd = app.add_subcommand("run", "Answer a problem file with its own mode");
  run_cmd->add_option("file", problem_path)->required();

  auto* implies = app.add_subcommand("implies", "Decide exact implication");
  implies->add_option("file", problem_path)->required();
  implies->add_option("--mode", mode_text,
                      "positive | shannon | semigraphoid | graphoid")
      ->check(CLI::IsMember({"positive", "shannon", "semigraphoid", "graphoid"}));

  auto* minlambda = app.add_subcommand("minlambda", "Smallest relaxation factor");
  minlambda->add_option("file", problem_path)->required();

  auto* checklambda = app.add_subcommand("checklambda", "Certify or refute a relaxation factor");
  checklambda->add_option("file", problem_path)->required();
  checklambda->add_option("--lambda", lambda_text, "Rational p/q");

  auto* verify = app.add_subcommand("verify-bound", "Compare the minimal factor with the class bound");
  verify->add_option("file", problem_path)->required();
  verify->add_option("--kind", kind_text, "saturated | recursive | marginal");

  auto* dsep = app.add_subcommand("dsep", "d-separation in a DAG");
  dsep->add_option("graph", graph_path)->required();
  dsep->add_option("--query", query, "Statement I(X;Y|Z)")->required();

  auto* usep = app.add_subcommand("usep", "Separation in an undirected graph");
  usep->add_option("graph", graph_path)->required();
  usep->add_option("--query", query, "Statement I(X;Y|Z)")->required();

  auto* basis = app.add_subcommand("basis", "Recursive basis of a DAG");
  basis->add_option("graph", graph_path)->required();

  std::string dist_path;
  auto* entropy = app.add_subcommand("entropy", "Entropy vector of a distribution file");
  entropy->add_option("file", dist_path)->required();

  double x = 0.01;
  double y = 0.01;
  bool sweep = false;
  std::vector<double> points = {1e-2, 1e-3, 1e-4, 1e-5};
  std::string dump_path;
  auto* cex = app.add_subcommand("counterexample", "Intersection counterexample");
  cex->add_option("--x", x, "Parameter x in (0, 1/3)");
  cex->add_option("--y", y, "Parameter y in (0, 1/6)");
  cex->add_flag("--sweep", sweep, "CSV over x = y on the sweep points");
  cex->add_option("--points", points, "Sweep points")->delimiter(',');
  cex->add_option("--dump", dump_path, "Write the distribution at (x, y)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPositive : kExitError;
  }

  try {
    if (*run_cmd) return run_problem(load_problem(problem_path), as_json);
    if (*implies) {
      auto p = load_problem(problem_path);
      if (!mode_text.empty()) {
        p.mode = ciapprox::parse_engine(mode_text);
      } else if (!p.mode || (*p.mode != Engine::kPositive &&
                             *p.mode != Engine::kShannon &&
                             *p.mode != Engine::kSemigraphoid &&
                             *p.mode != Engine::kGraphoid)) {
        p.mode = Engine::kPositive;
      }
      return run_problem(std::move(p), as_json);
    }
    if (*minlambda) {
      auto p = load_problem(problem_path);
      p.mode = Engine::kMinLambda;
      return run_problem(std::move(p), as_json);
    }
    if (*checklambda) {
      auto p = load_problem(problem_path);
      p.mode = Engine::kCheckLambda;
      if (!lambda_text.empty()) p.lambda = ciapprox::parse_rational(lambda_text);
      return run_problem(std::move(p), as_json);
    }
    if (*verify) {
      auto p = load_problem(problem_path);
      p.mode = Engine::kBound;
      if (!kind_text.empty()) p.kind = ciapprox::parse_bound_kind(kind_text);
      return run_problem(std::move(p), as_json);
    }
    if (*dsep) return run_separation(graph_path, query, true, as_json);
    if (*usep) return run_separation(graph_path, query, false, as_json);
    if (*basis) return run_basis(graph_path, as_json);
    if (*entropy) return run_entropy(dist_path, as_json);
    if (*cex) {
      return run_counterexample(x, y, sweep, points, dump_path, as_json);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
