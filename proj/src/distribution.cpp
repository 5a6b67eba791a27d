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

#include "ciapprox/distribution.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include "ciapprox/errors.hpp"

namespace ciapprox {
namespace {

double plogp(double p) { return p > 0 ? p * std::log2(p) : 0.0; }

void check_open(double v, double hi, const char* what) {
  if (!(v > 0 && v < hi)) {
    throw DomainError(std::string(what) + " must lie in the open interval (0, " +
                      (hi < 0.2 ? "1/6" : "1/3") + "), got " +
                      std::to_string(v));
  }
}

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (line[i] == ':' || line[i] == '=') {
      ++i;
    } else {
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i])) &&
             line[i] != ':' && line[i] != '=') {
        ++i;
      }
    }
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int parse_int(const Token& t, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(t.text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.text.size() || t.text.empty()) {
    throw ParseError(line, t.column, "expected an integer, got '" + t.text + "'");
  }
  return v;
}

double parse_double(const Token& t, int line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(t.text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.text.size() || t.text.empty()) {
    throw ParseError(line, t.column, "expected a number, got '" + t.text + "'");
  }
  return v;
}

}  // namespace

JointDistribution::JointDistribution(std::vector<std::string> names,
                                     std::vector<int> cardinalities,
                                     std::vector<double> probs)
    : names_(std::move(names)),
      cards_(std::move(cardinalities)),
      probs_(std::move(probs)) {
  if (names_.size() != cards_.size()) {
    throw DomainError("one cardinality per variable is required");
  }
  std::set<std::string> seen;
  double states = 1;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!seen.insert(names_[i]).second) {
      throw DomainError("duplicate variable '" + names_[i] + "'");
    }
    if (cards_[i] < 1) {
      throw DomainError("variable '" + names_[i] + "' has an empty domain");
    }
    states *= cards_[i];
  }
  if (states > static_cast<double>(std::size_t{1} << kMaxStateBits)) {
    throw CapExceeded("distributions support at most 2^" +
                      std::to_string(kMaxStateBits) + " states");
  }
  if (probs_.size() != static_cast<std::size_t>(states)) {
    throw DomainError("expected " + std::to_string(std::size_t(states)) +
                      " probabilities, got " + std::to_string(probs_.size()));
  }
  double total = 0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0) {
      throw DomainError("probabilities must be finite and nonnegative");
    }
    if (p == 0) strictly_positive_ = false;
    total += p;
  }
  if (std::fabs(total - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << total << ", not 1";
    throw DomainError(msg.str());
  }
}

std::vector<int> JointDistribution::state(std::size_t i) const {
  std::vector<int> digits(cards_.size());
  for (std::size_t k = cards_.size(); k-- > 0;) {
    digits[k] = static_cast<int>(i % cards_[k]);
    i /= cards_[k];
  }
  return digits;
}

int JointDistribution::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

double JointDistribution::marginal_entropy(VarSet vars) const {
  const int n = size();
  if (!vars.within(n)) throw DomainError("marginal outside the variables");
  if (vars.empty()) return 0;
  // Stride of each kept variable inside the marginal table.
  std::vector<std::size_t> stride(n, 0);
  std::size_t cells = 1;
  for (int k = n - 1; k >= 0; --k) {
    if (!vars.contains(k)) continue;
    stride[k] = cells;
    cells *= cards_[k];
  }
  std::vector<double> marginal(cells, 0.0);
  std::vector<int> digits(n, 0);
  std::size_t key = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    marginal[key] += probs_[i];
    // Odometer increment, keeping the marginal key in step.
    for (int k = n - 1; k >= 0; --k) {
      if (++digits[k] < cards_[k]) {
        key += stride[k];
        break;
      }
      key -= stride[k] * (cards_[k] - 1);
      digits[k] = 0;
    }
  }
  double h = 0;
  for (double p : marginal) h -= plogp(p);
  return h;
}

GroupedView::GroupedView(JointDistribution base,
                         std::vector<std::string> names,
                         std::vector<VarSet> groups)
    : base_(std::move(base)),
      names_(std::move(names)),
      groups_(std::move(groups)) {
  if (names_.size() != groups_.size()) {
    throw DomainError("one name per group is required");
  }
  VarSet covered;
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    if (groups_[i].empty() || groups_[i].intersects(covered) ||
        !groups_[i].within(base_.size())) {
      throw DomainError("groups must partition the base variables (group '" +
                        names_[i] + "')");
    }
    covered |= groups_[i];
  }
  if (covered != VarSet::full(base_.size())) {
    throw DomainError("groups must cover every base variable");
  }
}

VarSet GroupedView::expand(VarSet s) const {
  VarSet out;
  for (int i : s.elements()) out |= groups_[i];
  return out;
}

namespace {

template <typename F>
FloatEntropy entropy_over(int n, F&& marginal) {
  if (n > kMaxSetVars) {
    throw CapExceeded("entropy vectors support at most " +
                      std::to_string(kMaxSetVars) + " variables");
  }
  FloatEntropy::Values v(Eigen::Index{1} << n);
  v(0) = 0;
  for (VarSet::Bits s = 1; s < (VarSet::Bits{1} << n); ++s) {
    v(s) = marginal(VarSet(s));
  }
  return mark_polymatroid(FloatEntropy(n, std::move(v)));
}

}  // namespace

FloatEntropy entropy_vector(const JointDistribution& d) {
  return entropy_over(d.size(),
                      [&](VarSet s) { return d.marginal_entropy(s); });
}

FloatEntropy entropy_vector(const GroupedView& g) {
  return entropy_over(g.size(), [&](VarSet s) {
    return g.base().marginal_entropy(g.expand(s));
  });
}

JointDistribution parity_distribution(const std::vector<std::string>& omega,
                                      VarSet a, VarSet b, VarSet c) {
  const int n = static_cast<int>(omega.size());
  if (n > kMaxStateBits) {
    throw CapExceeded("parity distribution supports at most " +
                      std::to_string(kMaxStateBits) + " variables");
  }
  if (a.empty()) throw DomainError("the first set must be nonempty");
  if (a.intersects(b) || a.intersects(c) || b.intersects(c)) {
    throw DomainError("the three sets must be pairwise disjoint");
  }
  if (!(a | b | c).within(n)) {
    throw DomainError("sets mention variables outside omega");
  }
  const int a1 = a.lowest();
  const VarSet others = (a | b | c) - VarSet::single(a1);
  const std::size_t states = std::size_t{1} << n;
  const double p = 1.0 / static_cast<double>(states / 2);
  std::vector<double> probs(states, 0.0);
  for (std::size_t i = 0; i < states; ++i) {
    // Variable k is bit n-1-k of the state index.
    auto bit = [&](int k) { return static_cast<int>((i >> (n - 1 - k)) & 1u); };
    int parity = 0;
    for (int k : others.elements()) parity ^= bit(k);
    if (bit(a1) == parity) probs[i] = p;
  }
  return JointDistribution(omega, std::vector<int>(n, 2), std::move(probs));
}

double delta1(double x) {
  check_open(x, 1.0 / 3, "x");
  return -(plogp(1 - 3 * x) + 3 * plogp(x));
}

double delta2(double x) {
  check_open(x, 1.0 / 3, "x");
  return -(plogp(1 - 2 * x) + plogp(2 * x));
}

double f1(double y) {
  check_open(y, 1.0 / 6, "y");
  return -(2 * plogp(0.5 - 3 * y) + 6 * plogp(y));
}

double f2(double y) {
  check_open(y, 1.0 / 6, "y");
  return -(2 * plogp(0.5 - 2 * y) + 2 * plogp(2 * y));
}

DeltaF delta_f_functions(double x, double y) {
  return {delta1(x), delta2(x), f1(y), f2(y)};
}

GroupedView intersection_counterexample(double x, double y) {
  check_open(x, 1.0 / 3, "x");
  check_open(y, 1.0 / 6, "y");
  // Block layout: A1 A2 A3 | A4_1 A4_2 | A5_1 A5_2 | A6_1 A6_2 |
  // A7_1 A7_2 A7_3.
  std::vector<std::string> names = {"A1",   "A2",   "A3",   "A4_1",
                                    "A4_2", "A5_1", "A5_2", "A6_1",
                                    "A6_2", "A7_1", "A7_2", "A7_3"};
  const double pair[4] = {1 - 3 * x, x, x, x};
  double triple[8];
  for (int s = 0; s < 8; ++s) triple[s] = y;
  triple[0] = triple[7] = 0.5 - 3 * y;

  std::vector<double> probs(std::size_t{1} << 12);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double fair = 0.125;
    const double p4 = pair[(i >> 7) & 3];
    const double p5 = pair[(i >> 5) & 3];
    const double p6 = pair[(i >> 3) & 3];
    const double p7 = triple[i & 7];
    probs[i] = fair * p4 * p5 * p6 * p7;
  }
  JointDistribution base(names, std::vector<int>(12, 2), std::move(probs));
  auto idx = [&](const char* name) { return base.find(name); };
  std::vector<VarSet> groups = {
      VarSet::of({idx("A2"), idx("A6_1"), idx("A7_1"), idx("A5_1")}),
      VarSet::of({idx("A3"), idx("A6_2"), idx("A7_2"), idx("A4_1")}),
      VarSet::of({idx("A1"), idx("A5_2"), idx("A7_3"), idx("A4_2")}),
  };
  return GroupedView(std::move(base), {"A", "B", "C"}, std::move(groups));
}

CounterexampleForms counterexample_closed_forms(double x, double y) {
  const DeltaF d = delta_f_functions(x, y);
  CounterexampleForms out;
  out.h_single = 2 + 2 * d.delta2;
  out.h_pair = 2 + d.delta1 + 2 * d.delta2 + d.f2;
  out.h_all = 3 + 3 * d.delta1 + d.f1;
  out.i_ab_given_c = 2 * d.delta2 - d.delta1 + 2 * d.f2 - d.f1 - 1;
  out.i_ab = 2 * d.delta2 - d.delta1 - d.f2 + 2;
  return out;
}

CiSet project_marginals(const CiSet& s, VarSet u) {
  const int n = s.ambient();
  CiSet out(n);
  for (const auto& t : s) {
    if (!t.z.empty()) {
      throw DomainError(format_triple(t, default_names(n)) +
                        " is not a marginal statement");
    }
    out.insert(CiTriple{t.x & u, t.y & u, VarSet()});
  }
  return out;
}

std::string dump_distribution(const JointDistribution& d) {
  std::ostringstream out;
  out << "vars:";
  for (const auto& name : d.names()) out << ' ' << name;
  out << '\n';
  bool binary = true;
  for (int c : d.cardinalities()) binary = binary && c == 2;
  if (!binary) {
    out << "card:";
    for (int c : d.cardinalities()) out << ' ' << c;
    out << '\n';
  }
  char buf[64];
  for (std::size_t i = 0; i < d.state_count(); ++i) {
    for (int digit : d.state(i)) out << digit << ' ';
    std::snprintf(buf, sizeof buf, ": %.17g\n", d.probs()[i]);
    out << buf;
  }
  return out.str();
}

DistributionFile parse_distribution(std::string_view text) {
  std::vector<std::string> names;
  std::vector<int> cards;
  struct Row {
    std::vector<int> digits;
    double p;
    int line;
  };
  std::vector<Row> rows;
  struct GroupLine {
    std::string name;
    std::vector<Token> members;
    int line;
  };
  std::vector<GroupLine> group_lines;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.resize(hash);
    }
    const std::vector<Token> tok = tokenize(raw);
    if (tok.empty()) continue;
    if (tok[0].text == "vars" && tok.size() >= 2 && tok[1].text == ":") {
      if (!names.empty()) {
        throw ParseError(line_no, tok[0].column, "duplicate vars line");
      }
      for (std::size_t i = 2; i < tok.size(); ++i) {
        names.push_back(tok[i].text);
      }
      if (names.empty()) {
        throw ParseError(line_no, tok[0].column, "no variables declared");
      }
    } else if (tok[0].text == "card" && tok.size() >= 2 &&
               tok[1].text == ":") {
      for (std::size_t i = 2; i < tok.size(); ++i) {
        cards.push_back(parse_int(tok[i], line_no));
      }
    } else if (tok[0].text == "group") {
      if (tok.size() < 4 || tok[2].text != "=") {
        throw ParseError(line_no, tok[0].column,
                         "expected 'group NAME = members...'");
      }
      group_lines.push_back(
          {tok[1].text, {tok.begin() + 3, tok.end()}, line_no});
    } else {
      Row row{{}, 0, line_no};
      std::size_t i = 0;
      for (; i < tok.size() && tok[i].text != ":"; ++i) {
        row.digits.push_back(parse_int(tok[i], line_no));
      }
      if (i + 2 != tok.size()) {
        throw ParseError(line_no, tok[0].column,
                         "expected 'd d ... : probability'");
      }
      row.p = parse_double(tok[i + 1], line_no);
      rows.push_back(std::move(row));
    }
  }
  if (names.empty()) throw ParseError(1, 1, "missing vars line");
  if (cards.empty()) cards.assign(names.size(), 2);
  if (cards.size() != names.size()) {
    throw ParseError(1, 1, "card line must list one size per variable");
  }
  double states = 1;
  for (int c : cards) states *= std::max(c, 1);
  if (states > static_cast<double>(std::size_t{1} << kMaxStateBits)) {
    throw CapExceeded("distributions support at most 2^" +
                      std::to_string(kMaxStateBits) + " states");
  }
  std::vector<double> probs(static_cast<std::size_t>(states), 0.0);
  std::vector<bool> seen(probs.size(), false);
  for (const Row& row : rows) {
    if (row.digits.size() != names.size()) {
      throw ParseError(row.line, 1,
                       "state must have one digit per variable");
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (row.digits[k] < 0 || row.digits[k] >= cards[k]) {
        throw ParseError(row.line, 1,
                         "digit out of range for '" + names[k] + "'");
      }
      index = index * cards[k] + row.digits[k];
    }
    if (seen[index]) throw ParseError(row.line, 1, "duplicate state");
    seen[index] = true;
    probs[index] = row.p;
  }
  JointDistribution base(names, cards, std::move(probs));
  DistributionFile file{std::move(base), {}, {}};
  for (const GroupLine& g : group_lines) {
    VarSet members;
    for (const Token& t : g.members) {
      const int idx = file.base.find(t.text);
      if (idx < 0) {
        throw ParseError(g.line, t.column, "unknown variable '" + t.text + "'");
      }
      members |= VarSet::single(idx);
    }
    file.group_names.push_back(g.name);
    file.groups.push_back(members);
  }
  return file;
}

}  // namespace ciapprox
