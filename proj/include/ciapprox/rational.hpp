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

#ifndef CIAPPROX_RATIONAL_HPP_
#define CIAPPROX_RATIONAL_HPP_

#include <gmpxx.h>

#include <Eigen/Core>
#include <string>
#include <string_view>

namespace ciapprox {

// Arbitrary-precision rational used for every exact computation.
using Rational = mpq_class;

// Parses "p", "p/q" or "-p/q". Throws DomainError on malformed input or a
// zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form ("p" when q == 1).
std::string to_string(const Rational& value);

// p/q in lowest terms. mpq_class(p, q) alone does not reduce.
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace ciapprox

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // CIAPPROX_RATIONAL_HPP_
