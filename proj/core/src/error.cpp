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

#include "homophily/error.hpp"

namespace homophily {
namespace {

std::string locate(const std::string& what, const std::string& source, std::size_t line) {
  std::string prefix;
  if (!source.empty()) prefix = source;
  if (line > 0) prefix += (prefix.empty() ? "line " : ":") + std::to_string(line);
  return prefix.empty() ? what : prefix + ": " + what;
}

}  // namespace

InputError::InputError(const std::string& what, std::string source, std::size_t line)
    : Error(locate(what, source, line)),
      message_(what),
      source_(std::move(source)),
      line_(line) {}

InputError InputError::with_source(std::string source) const {
  return InputError(message_, std::move(source), line_);
}

}  // namespace homophily
