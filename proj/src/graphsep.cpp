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

#include "ciapprox/graphsep.hpp"

#include <algorithm>
#include <deque>

#include "ciapprox/errors.hpp"

namespace ciapprox {
namespace {

void check_separation_query(int n, VarSet x, VarSet y, VarSet z) {
  if (x.empty() || y.empty()) {
    throw DomainError("separation query needs nonempty x and y");
  }
  if (x.intersects(y) || x.intersects(z) || y.intersects(z)) {
    throw DomainError("separation query sets must be pairwise disjoint");
  }
  if (!(x | y | z).within(n)) {
    throw DomainError("separation query mentions an unknown vertex");
  }
}

std::vector<int> identity_order(std::size_t n) {
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  return order;
}

}  // namespace

UGraph::UGraph(int n) : n_(n), adj_(n) {
  if (n < 0 || n > kMaxSetVars) {
    throw CapExceeded("graphs support at most " + std::to_string(kMaxSetVars) +
                      " vertices");
  }
}

void UGraph::add_edge(int u, int v) {
  if (u == v) throw DomainError("self-loops are not allowed");
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw DomainError("edge endpoint out of range");
  }
  adj_[u] |= VarSet::single(v);
  adj_[v] |= VarSet::single(u);
}

int UGraph::edge_count() const {
  int twice = 0;
  for (auto a : adj_) twice += a.size();
  return twice / 2;
}

Dag::Dag(std::vector<VarSet> parents, std::vector<int> order)
    : parents_(std::move(parents)), order_(std::move(order)) {
  const int n = size();
  if (n > kMaxSetVars) {
    throw CapExceeded("graphs support at most " + std::to_string(kMaxSetVars) +
                      " vertices");
  }
  if (static_cast<int>(order_.size()) != n) {
    throw DomainError("order must list every vertex exactly once");
  }
  position_.assign(n, -1);
  for (int k = 0; k < n; ++k) {
    const int v = order_[k];
    if (v < 0 || v >= n || position_[v] != -1) {
      throw DomainError("order must list every vertex exactly once");
    }
    position_[v] = k;
  }
  for (int v = 0; v < n; ++v) {
    if (!parents_[v].subset_of(predecessors(v))) {
      throw DomainError("parents of vertex " + std::to_string(v) +
                        " must precede it in the order");
    }
  }
}

Dag::Dag(std::vector<VarSet> parents)
    : Dag(parents, identity_order(parents.size())) {}

VarSet Dag::children(int v) const {
  VarSet out;
  for (int c = 0; c < size(); ++c) {
    if (parents_[c].contains(v)) out |= VarSet::single(c);
  }
  return out;
}

VarSet Dag::predecessors(int v) const {
  VarSet out;
  for (int k = 0; k < position_[v]; ++k) out |= VarSet::single(order_[k]);
  return out;
}

VarSet Dag::ancestors_of(VarSet set) const {
  VarSet out = set;
  for (int k = size() - 1; k >= 0; --k) {
    const int v = order_[k];
    if (out.contains(v)) out |= parents_[v];
  }
  return out;
}

bool u_separates(const UGraph& g, VarSet x, VarSet y, VarSet z) {
  check_separation_query(g.size(), x, y, z);
  VarSet reached = x;
  std::deque<int> frontier;
  for (int v : x.elements()) frontier.push_back(v);
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop_front();
    const VarSet next = g.neighbors(v) - z - reached;
    if (next.intersects(y)) return false;
    reached |= next;
    for (int w : next.elements()) frontier.push_back(w);
  }
  return true;
}

// Reachability over (vertex, direction) states. kUp means the trail entered
// the vertex from one of its children, kDown from one of its parents.
bool d_separates(const Dag& d, VarSet x, VarSet y, VarSet z) {
  check_separation_query(d.size(), x, y, z);
  enum Direction { kUp = 0, kDown = 1 };
  const VarSet activating = d.ancestors_of(z);
  std::vector<VarSet> visited(2);
  std::deque<std::pair<int, Direction>> frontier;
  for (int v : x.elements()) frontier.emplace_back(v, kUp);

  while (!frontier.empty()) {
    auto [v, dir] = frontier.front();
    frontier.pop_front();
    if (visited[dir].contains(v)) continue;
    visited[dir] |= VarSet::single(v);
    if (!z.contains(v) && y.contains(v)) return false;

    if (dir == kUp) {
      if (z.contains(v)) continue;
      for (int p : d.parents(v).elements()) frontier.emplace_back(p, kUp);
      for (int c : d.children(v).elements()) frontier.emplace_back(c, kDown);
    } else {
      if (!z.contains(v)) {
        for (int c : d.children(v).elements()) frontier.emplace_back(c, kDown);
      }
      // v is head-to-head on the trail continuing to a parent.
      if (activating.contains(v)) {
        for (int p : d.parents(v).elements()) frontier.emplace_back(p, kUp);
      }
    }
  }
  return true;
}

UGraph independence_graph(const CiSet& pairs) {
  const int n = pairs.ambient();
  const VarSet all = VarSet::full(n);
  std::vector<VarSet> missing(n);
  for (const auto& t : pairs) {
    if (t.x.size() != 1 || t.y.size() != 1 || t.x == t.y ||
        t.z != all - t.x - t.y) {
      throw DomainError("not a saturated vertex pair: " +
                        format_triple(t, default_names(n)));
    }
    missing[t.x.lowest()] |= t.y;
    missing[t.y.lowest()] |= t.x;
  }
  UGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!missing[u].contains(v)) g.add_edge(u, v);
    }
  }
  return g;
}

CiSet recursive_basis(const Dag& d) {
  CiSet out(d.size());
  for (int v : d.order()) {
    const VarSet parents = d.parents(v);
    out.insert(CiTriple{VarSet::single(v), d.predecessors(v) - parents,
                        parents});
  }
  return out;
}

Dag dag_from_basis(const CiSet& s, const std::vector<int>& order) {
  const int n = s.ambient();
  if (static_cast<int>(order.size()) != n) {
    throw DomainError("order must list every vertex exactly once");
  }
  std::vector<VarSet> pred(n);
  {
    VarSet before;
    for (int v : order) {
      if (v < 0 || v >= n) throw DomainError("order vertex out of range");
      pred[v] = before;
      before |= VarSet::single(v);
    }
  }
  // Default: no independence, every predecessor is a parent.
  std::vector<VarSet> parents = pred;
  std::vector<bool> assigned(n, false);
  const VarNames names = default_names(n);
  for (const auto& t : s) {
    int vertex = -1;
    for (auto [self, other] : {std::pair{t.x, t.y}, std::pair{t.y, t.x}}) {
      if (self.size() != 1 || other.intersects(self)) continue;
      const int v = self.lowest();
      if ((other | t.z) == pred[v]) vertex = v;
    }
    if (vertex < 0 || assigned[vertex]) {
      throw DomainError("not a recursive basis row for this order: " +
                        format_triple(t, names));
    }
    assigned[vertex] = true;
    parents[vertex] = t.z;
  }
  return Dag(std::move(parents), order);
}

}  // namespace ciapprox
