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

#include "ciapprox/core.hpp"

#include <algorithm>

#include "ciapprox/errors.hpp"
#include "ciapprox/rational.hpp"

namespace ciapprox {

std::vector<int> VarSet::elements() const {
  std::vector<int> out;
  out.reserve(size());
  for (Bits b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

bool lex_less(VarSet a, VarSet b) {
  while (!a.empty() && !b.empty()) {
    const int ai = a.lowest();
    const int bi = b.lowest();
    if (ai != bi) return ai < bi;
    a -= VarSet::single(ai);
    b -= VarSet::single(bi);
  }
  return a.empty() && !b.empty();
}

CiTriple canonicalize(VarSet x, VarSet y, VarSet z) {
  x -= z;
  y -= z;
  if (x.empty() || y.empty()) return CiTriple{VarSet(), x | y, z};
  if (lex_less(y, x)) std::swap(x, y);
  return CiTriple{x, y, z};
}

TripleClass classify(const CiTriple& t, int n) {
  TripleClass c;
  c.saturated = t.vars() == VarSet::full(n);
  c.marginal = t.z.empty();
  c.conditional = t.conditional();
  return c;
}

CiSet::CiSet(int n, std::initializer_list<CiTriple> triples) : n_(n) {
  for (const auto& t : triples) insert(t);
}

bool CiSet::insert(const CiTriple& t) {
  if (!t.vars().within(n_)) {
    throw DomainError("triple mentions a variable outside the ambient size " +
                      std::to_string(n_));
  }
  const CiTriple c = canonicalize(t);
  if (c.trivial() || !index_.insert(c).second) return false;
  triples_.push_back(c);
  return true;
}

bool CiSet::contains(const CiTriple& t) const {
  return index_.count(canonicalize(t)) > 0;
}

VarSet CiSet::vars() const {
  VarSet v;
  for (const auto& t : triples_) v |= t.vars();
  return v;
}

VarNames default_names(int n) {
  VarNames names;
  for (int i = 0; i < n; ++i) names.push_back("X" + std::to_string(i + 1));
  return names;
}

std::string format_set(VarSet s, const VarNames& names) {
  std::string out;
  for (int i : s.elements()) {
    out += i < static_cast<int>(names.size()) ? names[i]
                                              : "X" + std::to_string(i + 1);
  }
  return out;
}

std::string format_triple(const CiTriple& t, const VarNames& names) {
  std::string out = "I(" + format_set(t.x, names) + ";" +
                    format_set(t.y, names);
  if (!t.z.empty()) out += "|" + format_set(t.z, names);
  return out + ")";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return DomainError("malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t slash = s.find('/');
  auto digits_ok = [](std::string_view part, bool allow_sign) {
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) {
      part.remove_prefix(1);
    }
    return !part.empty() && std::all_of(part.begin(), part.end(), [](char c) {
      return c >= '0' && c <= '9';
    });
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  mpz_class p(num, 10);
  mpz_class q(den, 10);
  if (q == 0) throw DomainError("zero denominator in '" + s + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

}  // namespace ciapprox
