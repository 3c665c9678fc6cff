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
#include <vector>

namespace homophily {

/// Dense row-major s x s matrix indexed by color pairs.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t size, const T& fill = T{})
      : size_(size), data_(size * size, fill) {}

  std::size_t size() const noexcept { return size_; }

  T& operator()(std::size_t row, std::size_t col) { return data_[row * size_ + col]; }
  const T& operator()(std::size_t row, std::size_t col) const {
    return data_[row * size_ + col];
  }

  /// Writes both (row, col) and (col, row).
  void set_symmetric(std::size_t row, std::size_t col, const T& value) {
    (*this)(row, col) = value;
    (*this)(col, row) = value;
  }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<T> data_;
};

/// Position in an s x s color-pair matrix.
struct CellIndex {
  std::size_t row;
  std::size_t col;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

}  // namespace homophily
