// Copyright 2026 The waning authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WANING_ERRORS_HPP
#define WANING_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace waning {

// Statistical routines throw these instead of returning sentinel values.
// Argument-contract violations use std::invalid_argument / std::domain_error.

class EmptySampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TooFewEventsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an operation cannot honor its accuracy contract for the given
// parameter regime (e.g. an unbounded integral with no decay to truncate by).
class UnsupportedConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Carries the 1-based line number of the offending input record (0 when the
// failure is not tied to a single line, e.g. empty input).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace waning

#endif  // WANING_ERRORS_HPP
