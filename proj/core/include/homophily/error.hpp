// Copyright 2026 The Homophily Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homophily {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected input data: malformed files, inconsistent labels, invalid graphs.
/// When the input came from a file, `source()` and `line()` locate it.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what, std::string source = {},
                      std::size_t line = 0);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

  /// Copy of this error with a file name attached (keeps the line number).
  InputError with_source(std::string source) const;

 private:
  std::string message_;
  std::string source_;
  std::size_t line_;
};

/// A call whose arguments violate the documented preconditions.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Floating point trouble that the exact formulas rule out, e.g. a variance
/// that came out significantly negative.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured coloring budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace homophily
