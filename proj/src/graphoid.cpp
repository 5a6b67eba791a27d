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

#include "ciapprox/graphoid.hpp"

#include <deque>
#include <unordered_set>

#include "ciapprox/errors.hpp"

namespace ciapprox {
namespace {

class ClosureEngine {
 public:
  ClosureEngine(int n, ClosureMode mode, bool trace)
      : mode_(mode), result_{CiSet(n), std::nullopt} {
    if (trace) result_.trace.emplace();
  }

  void add_input(const CiTriple& t) {
    const CiTriple c = canonicalize(t);
    if (c.trivial() || !seen_.insert(c).second) return;
    result_.closure.insert(c);
    if (result_.trace) (*result_.trace)[c] = Derivation{Axiom::kInput, {}};
    if (c.disjoint()) queue_.push_back(c);
  }

  ClosureResult run() && {
    while (!queue_.empty()) {
      const CiTriple t = queue_.front();
      queue_.pop_front();
      expand(t.x, t.y, t.z, t);
      expand(t.y, t.x, t.z, t);
    }
    return std::move(result_);
  }

 private:
  bool has(VarSet x, VarSet y, VarSet z) const {
    return seen_.count(canonicalize(x, y, z)) > 0;
  }

  void emit(VarSet x, VarSet y, VarSet z, Axiom axiom,
            std::vector<CiTriple> premises) {
    const CiTriple c = canonicalize(x, y, z);
    if (c.trivial() || !seen_.insert(c).second) return;
    result_.closure.insert(c);
    if (result_.trace) {
      (*result_.trace)[c] = Derivation{axiom, std::move(premises)};
    }
    queue_.push_back(c);
  }

  // Applies every rule with t read as (x;y|z).
  void expand(VarSet x, VarSet y, VarSet z, const CiTriple& t) {
    // Decomposition and weak union split y into a kept part and a moved part.
    for_each_subset(y, [&](VarSet kept) {
      if (kept.empty() || kept == y) return;
      emit(x, kept, z, Axiom::kDecomposition, {t});
      emit(x, kept, z | (y - kept), Axiom::kWeakUnion, {t});
    });

    const int n = result_.closure.ambient();
    const VarSet outside = VarSet::full(n) - (x | y | z);

    // Contraction with t as (x;y|z): partner (x;w|zy).
    for_each_subset(outside, [&](VarSet w) {
      if (w.empty() || !has(x, w, z | y)) return;
      emit(x, y | w, z, Axiom::kContraction, {t, canonicalize(x, w, z | y)});
    });
    // Contraction with t as (x;w|z') where z' = z0 ∪ y0: partner (x;y0|z0).
    for_each_subset(z, [&](VarSet y0) {
      if (y0.empty() || !has(x, y0, z - y0)) return;
      emit(x, y0 | y, z - y0, Axiom::kContraction,
           {canonicalize(x, y0, z - y0), t});
    });

    if (mode_ == ClosureMode::kGraphoid) {
      // Intersection with t as (x;y|z0 w): partner (x;w|z0 y). The rule is
      // symmetric in its premises, so one direction covers both.
      for_each_subset(z, [&](VarSet w) {
        if (w.empty() || !has(x, w, (z - w) | y)) return;
        emit(x, y | w, z - w, Axiom::kIntersection,
             {t, canonicalize(x, w, (z - w) | y)});
      });
    }
  }

  ClosureMode mode_;
  ClosureResult result_;
  std::unordered_set<CiTriple> seen_;
  std::deque<CiTriple> queue_;
};

}  // namespace

std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::kInput: return "input";
    case Axiom::kDecomposition: return "decomposition";
    case Axiom::kWeakUnion: return "weak-union";
    case Axiom::kContraction: return "contraction";
    case Axiom::kIntersection: return "intersection";
  }
  return "unknown";
}

ClosureResult closure(const CiSet& s, ClosureMode mode, bool trace) {
  if (s.ambient() > kMaxClosureVars) {
    throw CapExceeded("closure supports at most " +
                      std::to_string(kMaxClosureVars) + " variables");
  }
  ClosureEngine engine(s.ambient(), mode, trace);
  for (const auto& t : s) engine.add_input(t);
  return std::move(engine).run();
}

bool derives(const CiSet& s, const CiTriple& t, ClosureMode mode) {
  const CiTriple c = canonicalize(t);
  if (c.trivial()) return true;
  return closure(s, mode).closure.contains(c);
}

}  // namespace ciapprox
