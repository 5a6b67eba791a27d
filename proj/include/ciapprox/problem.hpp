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

#ifndef CIAPPROX_PROBLEM_HPP_
#define CIAPPROX_PROBLEM_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ciapprox/core.hpp"
#include "ciapprox/graphsep.hpp"
#include "ciapprox/rational.hpp"
#include "ciapprox/shannon.hpp"

namespace ciapprox {

enum class Engine {
  kPositive,
  kShannon,
  kSemigraphoid,
  kGraphoid,
  kMinLambda,
  kCheckLambda,
  kBound,
};
std::string engine_name(Engine e);
// Throws DomainError for unknown names.
Engine parse_engine(std::string_view name);

struct ProblemFile {
  VarNames vars;
  std::vector<CiTriple> assume;
  std::vector<CiTriple> query;
  std::optional<Engine> mode;
  std::optional<Rational> lambda;
  std::optional<Rational> eps;
  std::optional<double> x;
  std::optional<double> y;
  std::optional<BoundKind> kind;

  CiSet assumptions() const;
  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

// Parses one statement "I(X;Y|Z)" or "I(X;Y)". Groups are sequences of
// declared names, matched longest first and optionally separated by blanks.
// The result is canonical. `line` and `column` locate `text` for errors.
CiTriple parse_statement(std::string_view text, const VarNames& names,
                         int line = 1, int column = 1);

// Throws ParseError with the line and column of the offending token.
ProblemFile parse_problem(std::string_view text);
std::string serialize_problem(const ProblemFile& p);

struct QueryResult {
  std::string query;
  Engine engine = Engine::kPositive;
  bool positive = false;
  // "implied", "not implied", "lambda = p/q", "unbounded", "certified",
  // "refuted", "within bound", "bound violated".
  std::string verdict;
  std::optional<std::string> lambda;
  std::optional<std::string> bound;
  // Certificate text, one line per nonzero multiplier plus the lambda line.
  std::optional<std::string> certificate;
  // Witness atom or polymatroid, formatted with the problem's names.
  std::optional<std::string> witness;
  // Rule and premises of the last derivation step.
  std::optional<std::string> derivation;
};

struct Report {
  std::vector<QueryResult> results;
  // 0 when every query answered positively, 2 otherwise.
  int exit_code() const;
};

// Answers each query with the problem's mode; queries run concurrently and
// results keep input order. Throws DomainError when the mode or a required
// parameter is missing, CapExceeded when an engine cap is exceeded.
Report run(const ProblemFile& p, const LpOptions& options = {});

// "h(A)=1 h(B)=1/2 ..." over every nonempty subset in bitmask order.
std::string format_entropy(const ExactEntropy& h, const VarNames& names);

// Graph file: a "vars:" line, then "node V parents P..." lines (directed)
// or "edge U V" lines (undirected). Mixing both is an error.
struct GraphFile {
  VarNames vars;
  std::optional<Dag> dag;
  std::optional<UGraph> ugraph;
};
// DAG topological order: Kahn's algorithm, ties broken by declaration
// order. Throws ParseError on unknown names or cycles.
GraphFile parse_graph(std::string_view text);

}  // namespace ciapprox

#endif  // CIAPPROX_PROBLEM_HPP_
