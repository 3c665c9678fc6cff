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

// Seeded random colored graphs for tests and benchmarks.

#pragma once

#include <cstddef>
#include <cstdint>

#include "homophily/graph.hpp"

namespace homophily {

/// Uniform simple graph with exactly `num_edges` edges on `num_nodes`
/// nodes, colored with `num_colors` classes as evenly as possible (class k
/// gets the nodes v with v % s == k before a shuffle). Deterministic in
/// `seed`. Throws DomainError if the edge count exceeds n(n-1)/2 or a class
/// would be empty.
ColoredGraph random_colored_graph(std::uint64_t num_nodes, std::uint64_t num_edges,
                                  std::size_t num_colors, std::uint64_t seed);

/// As above with m = round(density * n(n-1)/2).
ColoredGraph random_colored_graph_with_density(std::uint64_t num_nodes, double density,
                                               std::size_t num_colors, std::uint64_t seed);

}  // namespace homophily
