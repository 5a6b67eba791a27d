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

#ifndef CIAPPROX_GRAPHOID_HPP_
#define CIAPPROX_GRAPHOID_HPP_

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "ciapprox/core.hpp"

namespace ciapprox {

inline constexpr int kMaxClosureVars = 8;

enum class Axiom { kInput, kDecomposition, kWeakUnion, kContraction, kIntersection };

std::string_view axiom_name(Axiom a);

enum class ClosureMode { kSemigraphoid, kGraphoid };

struct Derivation {
  Axiom axiom = Axiom::kInput;
  std::vector<CiTriple> premises;
};

struct ClosureResult {
  // Input triples first, then derived triples in derivation order.
  CiSet closure;
  // First derivation found for every derived triple; present only when
  // tracing was requested.
  std::optional<std::map<CiTriple, Derivation>> trace;
};

// Fixed point of the semi-graphoid axioms (symmetry, decomposition, weak
// union, contraction), plus intersection in graphoid mode. The axioms act on
// triples with pairwise disjoint x, y, z. Conditionals and other overlapping
// triples from the input are kept but take no part in derivations. Throws
// CapExceeded for more than kMaxClosureVars variables.
ClosureResult closure(const CiSet& s, ClosureMode mode, bool trace = false);

inline ClosureResult semigraphoid_closure(const CiSet& s, bool trace = false) {
  return closure(s, ClosureMode::kSemigraphoid, trace);
}

inline ClosureResult graphoid_closure(const CiSet& s, bool trace = false) {
  return closure(s, ClosureMode::kGraphoid, trace);
}

// Membership of canonical t in the closure. Trivial triples are always
// derivable.
bool derives(const CiSet& s, const CiTriple& t, ClosureMode mode);

}  // namespace ciapprox

#endif  // CIAPPROX_GRAPHOID_HPP_
