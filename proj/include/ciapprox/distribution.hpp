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

#ifndef CIAPPROX_DISTRIBUTION_HPP_
#define CIAPPROX_DISTRIBUTION_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "ciapprox/core.hpp"
#include "ciapprox/entropy.hpp"

namespace ciapprox {

inline constexpr int kMaxStateBits = 20;
inline constexpr double kNormalizationTolerance = 1e-12;

// A dense joint probability table. States are ordered lexicographically
// with variable 0 as the most significant digit.
class JointDistribution {
 public:
  // Throws DomainError on duplicate names, empty domains, negative or
  // non-finite probabilities, or a total mass off by more than 1e-12, and
  // CapExceeded above 2^20 states.
  JointDistribution(std::vector<std::string> names,
                    std::vector<int> cardinalities, std::vector<double> probs);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& cardinalities() const { return cards_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t state_count() const { return probs_.size(); }
  bool strictly_positive() const { return strictly_positive_; }

  // Digits of state index i, variable 0 first.
  std::vector<int> state(std::size_t i) const;
  // Base-2 entropy of the marginal on `vars`.
  double marginal_entropy(VarSet vars) const;
  // Index of the variable called `name`, or -1.
  int find(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> cards_;
  std::vector<double> probs_;
  bool strictly_positive_ = true;
};

// Composite variables formed by grouping base variables.
class GroupedView {
 public:
  // `groups` must partition the base variables; throws DomainError
  // otherwise.
  GroupedView(JointDistribution base, std::vector<std::string> names,
              std::vector<VarSet> groups);

  const JointDistribution& base() const { return base_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<VarSet>& groups() const { return groups_; }
  // Union of the base variables of the grouped variables in `s`.
  VarSet expand(VarSet s) const;

 private:
  JointDistribution base_;
  std::vector<std::string> names_;
  std::vector<VarSet> groups_;
};

// Every marginal entropy, polymatroid-checked at 1e-9. Throws CapExceeded
// above kMaxSetVars variables.
FloatEntropy entropy_vector(const JointDistribution& d);
FloatEntropy entropy_vector(const GroupedView& g);

// Binary variables, all independent fair bits except the lowest member a1
// of a, which is the parity of the other members of a, b and c.
JointDistribution parity_distribution(const std::vector<std::string>& omega,
                                      VarSet a, VarSet b, VarSet c);

struct DeltaF {
  double delta1 = 0;
  double delta2 = 0;
  double f1 = 0;
  double f2 = 0;
};

// Each throws DomainError outside the open domain x in (0, 1/3) or
// y in (0, 1/6).
double delta1(double x);
double delta2(double x);
double f1(double y);
double f2(double y);
DeltaF delta_f_functions(double x, double y);

// Twelve binary variables in seven independent blocks, grouped into three
// composite variables A, B, C.
GroupedView intersection_counterexample(double x, double y);

// Closed-form entropies and informations of the counterexample.
struct CounterexampleForms {
  double h_single = 0;  // H(A) = H(B) = H(C)
  double h_pair = 0;    // H(AB) = H(AC) = H(BC)
  double h_all = 0;     // H(ABC)
  double i_ab_given_c = 0;
  double i_ab = 0;
};
CounterexampleForms counterexample_closed_forms(double x, double y);

// {(X∩U ; Y∩U) : (X;Y) in s}, trivial results dropped. Members must be
// marginal; throws DomainError otherwise.
CiSet project_marginals(const CiSet& s, VarSet u);

// Text form: a "vars:" line, an optional "card:" line (default all 2), and
// one "d d ... : p" line per state in lexicographic order.
std::string dump_distribution(const JointDistribution& d);

// Parsed distribution file. States not listed have probability 0. Optional
// "group NAME = v1 v2 ..." lines define a grouped view.
struct DistributionFile {
  JointDistribution base;
  std::vector<std::string> group_names;
  std::vector<VarSet> groups;
};
// Throws ParseError with line and column.
DistributionFile parse_distribution(std::string_view text);

}  // namespace ciapprox

#endif  // CIAPPROX_DISTRIBUTION_HPP_
