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

#include "ciapprox/problem.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "ciapprox/errors.hpp"
#include "ciapprox/graphoid.hpp"
#include "ciapprox/imeasure.hpp"

namespace ciapprox {
namespace {

bool is_blank(char c) { return std::isspace(static_cast<unsigned char>(c)); }

bool is_reserved(char c) {
  return is_blank(c) || c == ';' || c == '|' || c == '(' || c == ')' ||
         c == ':' || c == '#' || c == ',';
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

struct Word {
  std::string text;
  int column;
};

std::vector<Word> split_words(std::string_view s, int first_column) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (is_blank(s[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < s.size() && !is_blank(s[i])) ++i;
    out.push_back({std::string(s.substr(start, i - start)),
                   first_column + static_cast<int>(start)});
  }
  return out;
}

class StatementParser {
 public:
  StatementParser(std::string_view text, const VarNames& names, int line,
                  int column)
      : text_(text), names_(names), line_(line), column_(column) {}

  CiTriple parse() {
    skip_blanks();
    expect('I');
    skip_blanks();
    expect('(');
    const VarSet x = group();
    expect(';');
    const VarSet y = group();
    VarSet z;
    if (peek() == '|') {
      ++pos_;
      z = group();
    }
    expect(')');
    skip_blanks();
    if (pos_ != text_.size()) fail("unexpected text after statement");
    return canonicalize(x, y, z);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, column_ + static_cast<int>(pos_), msg);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_blanks() {
    while (pos_ < text_.size() && (is_blank(text_[pos_]) || text_[pos_] == ','))
      ++pos_;
  }

  void expect(char c) {
    skip_blanks();
    if (peek() != c) {
      fail(std::string("expected '") + c + "'" +
           (pos_ < text_.size() ? std::string(", got '") + peek() + "'"
                                : std::string(" at end of statement")));
    }
    ++pos_;
  }

  VarSet group() {
    VarSet out;
    skip_blanks();
    if (pos_ >= text_.size() || is_reserved(peek())) fail("empty group");
    while (pos_ < text_.size() && !is_reserved(peek())) {
      int best = -1;
      std::size_t best_len = 0;
      for (std::size_t i = 0; i < names_.size(); ++i) {
        const std::string& name = names_[i];
        if (name.size() > best_len &&
            text_.substr(pos_, name.size()) == name) {
          best = static_cast<int>(i);
          best_len = name.size();
        }
      }
      if (best < 0) {
        std::size_t end = pos_;
        while (end < text_.size() && !is_reserved(text_[end])) ++end;
        fail("unknown variable '" +
             std::string(text_.substr(pos_, end - pos_)) + "'");
      }
      out |= VarSet::single(best);
      pos_ += best_len;
      skip_blanks();
    }
    return out;
  }

  std::string_view text_;
  const VarNames& names_;
  int line_;
  int column_;
  std::size_t pos_ = 0;
};

// Splits "I(..) I(..)" into statements, parsing each.
std::vector<CiTriple> parse_statement_list(std::string_view rest,
                                           const VarNames& names, int line,
                                           int column) {
  std::vector<CiTriple> out;
  std::size_t i = 0;
  while (i < rest.size()) {
    if (is_blank(rest[i])) {
      ++i;
      continue;
    }
    const std::size_t close = rest.find(')', i);
    const std::size_t end = close == std::string_view::npos ? rest.size()
                                                            : close + 1;
    out.push_back(parse_statement(rest.substr(i, end - i), names, line,
                                  column + static_cast<int>(i)));
    i = end;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

VarNames declared_names(const std::vector<Word>& words, int line) {
  VarNames names;
  std::set<std::string> seen;
  for (const Word& w : words) {
    for (std::size_t k = 0; k < w.text.size(); ++k) {
      if (is_reserved(w.text[k])) {
        throw ParseError(line, w.column + static_cast<int>(k),
                         "invalid character in variable name");
      }
    }
    if (!seen.insert(w.text).second) {
      throw ParseError(line, w.column, "duplicate variable '" + w.text + "'");
    }
    names.push_back(w.text);
  }
  if (names.empty()) throw ParseError(line, 1, "no variables declared");
  if (static_cast<int>(names.size()) > kMaxSetVars) {
    throw ParseError(line, 1,
                     "at most " + std::to_string(kMaxSetVars) + " variables");
  }
  return names;
}

}  // namespace

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::kPositive:
      return "positive";
    case Engine::kShannon:
      return "shannon";
    case Engine::kSemigraphoid:
      return "semigraphoid";
    case Engine::kGraphoid:
      return "graphoid";
    case Engine::kMinLambda:
      return "minlambda";
    case Engine::kCheckLambda:
      return "checklambda";
    case Engine::kBound:
      return "bound";
  }
  return "?";
}

Engine parse_engine(std::string_view name) {
  for (Engine e : {Engine::kPositive, Engine::kShannon, Engine::kSemigraphoid,
                   Engine::kGraphoid, Engine::kMinLambda, Engine::kCheckLambda,
                   Engine::kBound}) {
    if (engine_name(e) == name) return e;
  }
  throw DomainError("unknown mode '" + std::string(name) + "'");
}

CiSet ProblemFile::assumptions() const {
  CiSet s(static_cast<int>(vars.size()));
  for (const auto& t : assume) s.insert(t);
  return s;
}

CiTriple parse_statement(std::string_view text, const VarNames& names,
                         int line, int column) {
  return StatementParser(text, names, line, column).parse();
}

ProblemFile parse_problem(std::string_view text) {
  ProblemFile p;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool have_query = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = strip_comment(raw);
    std::size_t start = 0;
    while (start < body.size() && is_blank(body[start])) ++start;
    if (start == body.size()) continue;
    const int key_col = static_cast<int>(start) + 1;
    const std::size_t colon = body.find(':', start);
    if (colon == std::string::npos) {
      throw ParseError(line, key_col, "expected 'keyword: value'");
    }
    std::string key = body.substr(start, colon - start);
    while (!key.empty() && is_blank(key.back())) key.pop_back();
    const std::string_view rest = std::string_view(body).substr(colon + 1);
    const int rest_col = static_cast<int>(colon) + 2;
    const std::vector<Word> words = split_words(rest, rest_col);

    auto single_value = [&]() -> const Word& {
      if (words.size() != 1) {
        throw ParseError(line, rest_col, "'" + key + "' takes one value");
      }
      return words[0];
    };
    auto need_vars = [&]() {
      if (p.vars.empty()) {
        throw ParseError(line, key_col, "statement before the vars line");
      }
    };

    if (key == "vars") {
      if (!p.vars.empty()) throw ParseError(line, key_col, "duplicate vars");
      p.vars = declared_names(words, line);
    } else if (key == "assume") {
      need_vars();
      for (auto& t : parse_statement_list(rest, p.vars, line, rest_col)) {
        p.assume.push_back(t);
      }
    } else if (key == "query") {
      need_vars();
      for (auto& t : parse_statement_list(rest, p.vars, line, rest_col)) {
        p.query.push_back(t);
      }
      have_query = true;
    } else if (key == "mode") {
      if (p.mode) throw ParseError(line, key_col, "duplicate mode");
      const Word& w = single_value();
      try {
        p.mode = parse_engine(w.text);
      } catch (const DomainError& e) {
        throw ParseError(line, w.column, e.what());
      }
    } else if (key == "lambda" || key == "eps") {
      const Word& w = single_value();
      try {
        (key == "lambda" ? p.lambda : p.eps) = parse_rational(w.text);
      } catch (const DomainError& e) {
        throw ParseError(line, w.column, e.what());
      }
    } else if (key == "x" || key == "y") {
      const Word& w = single_value();
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(w.text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != w.text.size()) {
        throw ParseError(line, w.column, "expected a number");
      }
      (key == "x" ? p.x : p.y) = v;
    } else if (key == "kind") {
      const Word& w = single_value();
      try {
        p.kind = parse_bound_kind(w.text);
      } catch (const DomainError& e) {
        throw ParseError(line, w.column, e.what());
      }
    } else {
      throw ParseError(line, key_col, "unknown keyword '" + key + "'");
    }
  }
  if (p.vars.empty()) throw ParseError(1, 1, "missing vars line");
  if (!have_query) throw ParseError(line + 1, 1, "missing query line");
  return p;
}

std::string serialize_problem(const ProblemFile& p) {
  std::ostringstream out;
  out << "vars:";
  for (const auto& v : p.vars) out << ' ' << v;
  out << '\n';
  if (!p.assume.empty()) {
    out << "assume:";
    for (const auto& t : p.assume) out << ' ' << format_triple(t, p.vars);
    out << '\n';
  }
  out << "query:";
  for (const auto& t : p.query) out << ' ' << format_triple(t, p.vars);
  out << '\n';
  if (p.mode) out << "mode: " << engine_name(*p.mode) << '\n';
  if (p.lambda) out << "lambda: " << to_string(*p.lambda) << '\n';
  if (p.eps) out << "eps: " << to_string(*p.eps) << '\n';
  if (p.x) out << "x: " << format_double(*p.x) << '\n';
  if (p.y) out << "y: " << format_double(*p.y) << '\n';
  if (p.kind) out << "kind: " << bound_kind_name(*p.kind) << '\n';
  return out.str();
}

int Report::exit_code() const {
  for (const auto& r : results) {
    if (!r.positive) return 2;
  }
  return 0;
}

std::string format_entropy(const ExactEntropy& h, const VarNames& names) {
  std::string out;
  for (VarSet::Bits s = 1; s < (VarSet::Bits{1} << h.ambient()); ++s) {
    if (!out.empty()) out += ' ';
    out += "h(" + format_set(VarSet(s), names) + ")=" +
           to_string(h(VarSet(s)));
  }
  return out;
}

namespace {

std::string describe_derivation(const CiTriple& t, const ClosureResult& c,
                                const VarNames& names) {
  if (!c.trace) return {};
  auto it = c.trace->find(t);
  if (it == c.trace->end()) return "assumed";
  std::string out(axiom_name(it->second.axiom));
  const char* sep = ": ";
  for (const auto& premise : it->second.premises) {
    out += sep + format_triple(premise, names);
    sep = ", ";
  }
  return out;
}

QueryResult answer(const ProblemFile& p, const CiSet& s, const CiTriple& t,
                   Engine engine, const ClosureResult* closure_result,
                   const LpOptions& options) {
  QueryResult r;
  r.query = format_triple(t, p.vars);
  r.engine = engine;
  switch (engine) {
    case Engine::kPositive: {
      const PositiveImplication pi = positive_implies(s, t);
      r.positive = pi.implied;
      if (pi.witness_atom) r.witness = format_set(*pi.witness_atom, p.vars);
      break;
    }
    case Engine::kShannon: {
      const ShannonImplication si = shannon_ei(s, t, options);
      r.positive = si.holds;
      if (si.counterexample) {
        r.witness = format_entropy(*si.counterexample, p.vars);
      }
      break;
    }
    case Engine::kSemigraphoid:
    case Engine::kGraphoid: {
      r.positive = t.trivial() || closure_result->closure.contains(t);
      if (r.positive && !t.trivial()) {
        r.derivation = describe_derivation(t, *closure_result, p.vars);
      }
      break;
    }
    case Engine::kMinLambda: {
      const MinLambda ml = min_lambda(s, t, options);
      r.positive = ml.bounded;
      if (ml.bounded) {
        r.lambda = to_string(*ml.value);
        r.verdict = "lambda = " + *r.lambda;
        r.certificate = ml.certificate->format(p.vars);
      } else {
        r.verdict = "unbounded";
      }
      return r;
    }
    case Engine::kCheckLambda: {
      const LambdaCheck lc = check_lambda(s, t, *p.lambda, options);
      r.positive = lc.certified;
      r.lambda = to_string(*p.lambda);
      r.verdict = lc.certified ? "certified" : "refuted";
      if (lc.certificate) r.certificate = lc.certificate->format(p.vars);
      if (lc.refutation) r.witness = format_entropy(*lc.refutation, p.vars);
      return r;
    }
    case Engine::kBound: {
      const BoundReport br = verify_theorem_bound(s, t, *p.kind, options);
      r.positive = !br.violation;
      r.verdict = br.violation ? "bound violated" : "within bound";
      r.bound = to_string(br.bound);
      if (br.lambda.bounded) {
        r.lambda = to_string(*br.lambda.value);
        r.certificate = br.lambda.certificate->format(p.vars);
      } else {
        r.lambda = "unbounded";
      }
      return r;
    }
  }
  r.verdict = r.positive ? "implied" : "not implied";
  return r;
}

}  // namespace

Report run(const ProblemFile& p, const LpOptions& options) {
  if (!p.mode) throw DomainError("problem has no mode");
  const Engine engine = *p.mode;
  if (engine == Engine::kCheckLambda && !p.lambda) {
    throw DomainError("checklambda needs a lambda parameter");
  }
  if (engine == Engine::kBound && !p.kind) {
    throw DomainError("bound mode needs a kind parameter");
  }
  const CiSet s = p.assumptions();
  std::optional<ClosureResult> closure_result;
  if (engine == Engine::kSemigraphoid || engine == Engine::kGraphoid) {
    closure_result = closure(s,
                             engine == Engine::kGraphoid
                                 ? ClosureMode::kGraphoid
                                 : ClosureMode::kSemigraphoid,
                             /*trace=*/true);
  }

  const std::size_t count = p.query.size();
  Report report;
  report.results.resize(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        report.results[i] =
            answer(p, s, p.query[i], engine,
                   closure_result ? &*closure_result : nullptr, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(
      count, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return report;
}

GraphFile parse_graph(std::string_view text) {
  GraphFile g;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  std::vector<VarSet> parents;
  std::vector<std::pair<int, int>> edges;
  bool directed = false;
  bool undirected = false;
  std::vector<bool> declared_node;
  auto lookup = [&](const Word& w) {
    for (std::size_t i = 0; i < g.vars.size(); ++i) {
      if (g.vars[i] == w.text) return static_cast<int>(i);
    }
    throw ParseError(line, w.column, "unknown variable '" + w.text + "'");
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = strip_comment(raw);
    const std::vector<Word> words = split_words(body, 1);
    if (words.empty()) continue;
    const Word& head = words[0];
    if (head.text == "vars:" || head.text == "vars") {
      if (!g.vars.empty()) throw ParseError(line, head.column, "duplicate vars");
      std::size_t first = 1;
      if (head.text == "vars") {
        if (words.size() < 2 || words[1].text != ":") {
          throw ParseError(line, head.column, "expected 'vars:'");
        }
        first = 2;
      }
      g.vars = declared_names({words.begin() + first, words.end()}, line);
      parents.assign(g.vars.size(), VarSet());
      declared_node.assign(g.vars.size(), false);
      continue;
    }
    if (g.vars.empty()) {
      throw ParseError(line, head.column, "graph line before the vars line");
    }
    if (head.text == "node") {
      if (words.size() < 2 || (words.size() > 2 && words[2].text != "parents")) {
        throw ParseError(line, head.column, "expected 'node V parents P...'");
      }
      const int v = lookup(words[1]);
      if (declared_node[v]) {
        throw ParseError(line, words[1].column, "node declared twice");
      }
      declared_node[v] = true;
      for (std::size_t k = 3; k < words.size(); ++k) {
        const int u = lookup(words[k]);
        if (u == v) throw ParseError(line, words[k].column, "self-loop");
        parents[v] |= VarSet::single(u);
      }
      directed = true;
    } else if (head.text == "edge") {
      if (words.size() != 3) {
        throw ParseError(line, head.column, "expected 'edge U V'");
      }
      const int u = lookup(words[1]);
      const int v = lookup(words[2]);
      if (u == v) throw ParseError(line, words[2].column, "self-loop");
      edges.emplace_back(u, v);
      undirected = true;
    } else {
      throw ParseError(line, head.column,
                       "unknown keyword '" + head.text + "'");
    }
    if (directed && undirected) {
      throw ParseError(line, head.column,
                       "graph mixes directed and undirected lines");
    }
  }
  if (g.vars.empty()) throw ParseError(1, 1, "missing vars line");
  const int n = static_cast<int>(g.vars.size());
  if (undirected) {
    UGraph ug(n);
    for (auto [u, v] : edges) ug.add_edge(u, v);
    g.ugraph = std::move(ug);
    return g;
  }
  std::vector<int> order;
  VarSet placed;
  while (static_cast<int>(order.size()) < n) {
    int pick = -1;
    for (int v = 0; v < n && pick < 0; ++v) {
      if (!placed.contains(v) && parents[v].subset_of(placed)) pick = v;
    }
    if (pick < 0) throw ParseError(line, 1, "the directed graph has a cycle");
    order.push_back(pick);
    placed |= VarSet::single(pick);
  }
  g.dag = Dag(parents, order);
  return g;
}

}  // namespace ciapprox
