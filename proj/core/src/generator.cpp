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

#include "homophily/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "homophily/error.hpp"

namespace homophily {
namespace {

// Keys are u * n + v with u < v.
NodePair pair_from_key(std::uint64_t key, std::uint64_t n) {
  return {static_cast<NodeId>(key / n), static_cast<NodeId>(key % n)};
}

}  // namespace

ColoredGraph random_colored_graph(std::uint64_t num_nodes, std::uint64_t num_edges,
                                  std::size_t num_colors, std::uint64_t seed) {
  const std::uint64_t n = num_nodes;
  if (num_colors == 0 || num_colors > n) {
    throw DomainError("need 1 <= num_colors <= num_nodes");
  }
  if (n >= (std::uint64_t{1} << 32)) throw DomainError("too many nodes");
  const std::uint64_t max_edges = n * (n - 1) / 2;
  if (num_edges > max_edges) {
    throw DomainError("cannot place " + std::to_string(num_edges) + " edges on " +
                      std::to_string(n) + " nodes");
  }

  std::mt19937_64 rng(seed);
  std::vector<NodePair> edges;
  if (num_edges * 2 > max_edges) {
    // Dense: shuffle all pairs and keep a prefix.
    edges.reserve(max_edges);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    edges.resize(num_edges);
  } else {
    // Sparse: draw keys u * n + v with u < v, dedup, top up until m distinct.
    std::uniform_int_distribution<std::uint64_t> node(0, n - 1);
    std::vector<std::uint64_t> keys;
    keys.reserve(num_edges);
    while (keys.size() < num_edges) {
      const std::size_t have = keys.size();
      for (std::size_t k = have; k < num_edges; ++k) {
        std::uint64_t u = node(rng);
        std::uint64_t v = node(rng);
        while (u == v) v = node(rng);
        if (u > v) std::swap(u, v);
        keys.push_back(u * n + v);
      }
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    }
    edges.reserve(keys.size());
    for (std::uint64_t key : keys) edges.push_back(pair_from_key(key, n));
  }

  std::vector<ColorId> colors(n);
  for (std::uint64_t v = 0; v < n; ++v) colors[v] = static_cast<ColorId>(v % num_colors);
  std::shuffle(colors.begin(), colors.end(), rng);
  return ColoredGraph::from_edges(n, edges, std::move(colors), num_colors);
}

ColoredGraph random_colored_graph_with_density(std::uint64_t num_nodes, double density,
                                               std::size_t num_colors, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw DomainError("density must be in [0, 1]");
  const double pairs = static_cast<double>(num_nodes) * (static_cast<double>(num_nodes) - 1) / 2;
  const auto m = static_cast<std::uint64_t>(std::llround(density * pairs));
  return random_colored_graph(num_nodes, m, num_colors, seed);
}

}  // namespace homophily
