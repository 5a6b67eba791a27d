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

#ifndef CIAPPROX_ERRORS_HPP_
#define CIAPPROX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ciapprox {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the domain of an operation (overlapping sets, bad ranges,
// malformed bases).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A size cap (variable count, state count, LP dimension) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// An entropy value was requested for a subset the vector does not define.
class MissingSubset : public Error {
 public:
  MissingSubset(std::string subset, const std::string& what)
      : Error(what), subset_(std::move(subset)) {}
  const std::string& subset() const { return subset_; }

 private:
  std::string subset_;
};

// Text input could not be parsed. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace ciapprox

#endif  // CIAPPROX_ERRORS_HPP_
