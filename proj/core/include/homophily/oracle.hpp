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

// Ground truth for the closed-form moments: walk every coloring with a given
// profile, or draw uniform ones, and measure M^{i,j} and L^i directly.
// Nothing here uses the closed-form formulas.

#pragma once

#include <cstddef>
#include <cstdint>

#include "homophily/graph.hpp"
#include "homophily/matrix.hpp"

namespace homophily {

struct MomentEstimate {
  double mean = 0.0;
  /// Exact (population) variance in exhaustive mode; the unbiased (N - 1)
  /// estimator in sampled mode.
  double variance = 0.0;
  /// Standard errors of `mean` and `variance`; 0 in exhaustive mode.
  double mean_se = 0.0;
  double variance_se = 0.0;
};

struct NullSampleSummary {
  bool exact = false;
  /// Colorings visited: the multinomial coefficient when exact, else N.
  std::uint64_t count = 0;
  SquareMatrix<MomentEstimate> edges;
  std::vector<MomentEstimate> isolated;

  std::size_t num_colors() const noexcept { return isolated.size(); }
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Exact moments over all n!/(c_1!...c_s!) colorings, visited as the
/// lexicographic permutations of the sorted color word. Throws
/// BudgetExceeded when the number of colorings exceeds `budget`, and
/// DomainError when the profile does not sum to n.
NullSampleSummary enumerate_moments(const ColoredGraph& graph, const ColorProfile& profile,
                                    std::uint64_t budget = kDefaultEnumerationBudget);

/// Moments estimated from `samples` uniform colorings (Fisher-Yates shuffles
/// of the color word). Samples are drawn in fixed-size chunks, each with its
/// own generator seeded from (seed, chunk index), and merged in chunk order,
/// so the summary is bit-identical for a given seed whatever `threads` is.
/// Throws DomainError if samples < 2.
NullSampleSummary sample_moments(const ColoredGraph& graph, const ColorProfile& profile,
                                 std::uint64_t samples, std::uint64_t seed,
                                 unsigned threads = 1);

}  // namespace homophily
