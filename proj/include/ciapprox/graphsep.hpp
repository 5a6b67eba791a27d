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

#ifndef CIAPPROX_GRAPHSEP_HPP_
#define CIAPPROX_GRAPHSEP_HPP_

#include <vector>

#include "ciapprox/core.hpp"
#include "ciapprox/entropy.hpp"

namespace ciapprox {

// Undirected simple graph on vertices 0..n-1.
class UGraph {
 public:
  explicit UGraph(int n);

  int size() const { return n_; }
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const { return adj_[u].contains(v); }
  VarSet neighbors(int v) const { return adj_[v]; }
  int edge_count() const;

  friend bool operator==(const UGraph&, const UGraph&) = default;

 private:
  int n_;
  std::vector<VarSet> adj_;
};

// Directed acyclic graph given by parent sets and a topological order.
class Dag {
 public:
  // `order` is a permutation of 0..n-1 and every parent of order[k] must
  // appear in order[0..k-1]. Throws DomainError otherwise.
  Dag(std::vector<VarSet> parents, std::vector<int> order);
  // Parents over the identity order 0..n-1.
  explicit Dag(std::vector<VarSet> parents);

  int size() const { return static_cast<int>(parents_.size()); }
  VarSet parents(int v) const { return parents_[v]; }
  VarSet children(int v) const;
  const std::vector<int>& order() const { return order_; }
  // Vertices strictly before v in the order.
  VarSet predecessors(int v) const;
  // `set` together with every vertex that has a descendant in it.
  VarSet ancestors_of(VarSet set) const;

 private:
  std::vector<VarSet> parents_;
  std::vector<int> order_;
  std::vector<int> position_;
};

// True iff every path between x and y meets z. x, y, z must be pairwise
// disjoint with x, y nonempty; throws DomainError otherwise.
bool u_separates(const UGraph& g, VarSet x, VarSet y, VarSet z);

// True iff z blocks every trail between x and y: a trail is active when each
// head-to-head vertex is in z or has a descendant in z and every other
// vertex is outside z. Same preconditions as u_separates.
bool d_separates(const Dag& d, VarSet x, VarSet y, VarSet z);

// Pairs (u;v|rest) with I(u;v|rest) <= eps. Float-backed vectors compare
// with a 1e-9 slack, rational ones exactly.
template <typename Scalar>
CiSet pairwise_basis(const EntropyVector<Scalar>& h, const Scalar& eps) {
  if (eps < Scalar(0)) throw DomainError("eps must be nonnegative");
  const int n = h.ambient();
  const VarSet all = VarSet::full(n);
  const Scalar limit = eps + default_tolerance<Scalar>();
  CiSet out(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const VarSet pair = VarSet::of({u, v});
      const CiTriple t{VarSet::single(u), VarSet::single(v), all - pair};
      if (eval_mi(h, t) <= limit) out.insert(t);
    }
  }
  return out;
}

// Complete graph minus the pairs listed in `pairs`. Every member must be a
// saturated single-vertex pair (u;v|rest); throws DomainError otherwise.
UGraph independence_graph(const CiSet& pairs);

// (X_i ; predecessors - parents | parents) for every vertex, trivial rows
// dropped.
CiSet recursive_basis(const Dag& d);

// Inverse of recursive_basis for a given order. Vertices without a row get
// all predecessors as parents. Throws DomainError naming the first triple
// that is not of the form (v ; pred(v) - P | P).
Dag dag_from_basis(const CiSet& s, const std::vector<int>& order);

}  // namespace ciapprox

#endif  // CIAPPROX_GRAPHSEP_HPP_
