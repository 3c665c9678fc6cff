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

#include "test_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_set>

namespace homophily::testing {
namespace {

std::vector<std::pair<NodeId, NodeId>> all_pairs(std::uint32_t n) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  return pairs;
}

double rel(double a, double b) {
  const double d = std::abs(a - b);
  return b == 0.0 ? d : d / std::abs(b);
}

}  // namespace

ColoredGraph make_graph(std::uint64_t n, std::vector<NodePair> edges, std::vector<ColorId> colors,
                        std::size_t s) {
  if (s == 0) s = colors.empty() ? 1 : *std::max_element(colors.begin(), colors.end()) + 1;
  return ColoredGraph::from_edges(n, edges, std::move(colors), s);
}

ColoredGraph path_graph(std::vector<ColorId> colors) {
  std::vector<NodePair> edges;
  for (NodeId v = 1; v < colors.size(); ++v) edges.push_back({v - 1, v});
  const auto n = colors.size();
  return make_graph(n, std::move(edges), std::move(colors));
}

ColoredGraph cycle_graph(std::vector<ColorId> colors) {
  const auto n = static_cast<NodeId>(colors.size());
  std::vector<NodePair> edges;
  for (NodeId v = 0; v < n; ++v) edges.push_back({v, static_cast<NodeId>((v + 1) % n)});
  return make_graph(n, std::move(edges), std::move(colors));
}

ColoredGraph star_graph(std::vector<ColorId> colors) {
  std::vector<NodePair> edges;
  for (NodeId v = 1; v < colors.size(); ++v) edges.push_back({0, v});
  const auto n = colors.size();
  return make_graph(n, std::move(edges), std::move(colors));
}

ColoredGraph complete_graph(std::vector<ColorId> colors) {
  const auto n = static_cast<std::uint32_t>(colors.size());
  std::vector<NodePair> edges;
  for (const auto& [u, v] : all_pairs(n)) edges.push_back({u, v});
  return make_graph(n, std::move(edges), std::move(colors));
}

ColoredGraph edgeless_graph(std::vector<ColorId> colors) {
  const auto n = colors.size();
  return make_graph(n, {}, std::move(colors));
}

std::vector<NodePair> edges_from_mask(std::uint32_t n, std::uint64_t mask) {
  std::vector<NodePair> edges;
  const auto pairs = all_pairs(n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (mask >> k & 1U) edges.push_back({pairs[k].first, pairs[k].second});
  }
  return edges;
}

std::vector<std::vector<NodePair>> nonisomorphic_graphs(std::uint32_t n) {
  const auto pairs = all_pairs(n);
  const std::size_t num_pairs = pairs.size();
  std::vector<std::uint32_t> index(n * n, 0);
  for (std::size_t k = 0; k < num_pairs; ++k) {
    index[pairs[k].first * n + pairs[k].second] = static_cast<std::uint32_t>(k);
    index[pairs[k].second * n + pairs[k].first] = static_cast<std::uint32_t>(k);
  }
  // For every permutation, where each pair bit moves to.
  std::vector<std::vector<std::uint32_t>> moves;
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::uint32_t> move(num_pairs);
    for (std::size_t k = 0; k < num_pairs; ++k) {
      move[k] = index[perm[pairs[k].first] * n + perm[pairs[k].second]];
    }
    moves.push_back(std::move(move));
  } while (std::next_permutation(perm.begin(), perm.end()));

  const std::uint64_t total = std::uint64_t{1} << num_pairs;
  std::vector<bool> seen(total, false);
  std::vector<std::vector<NodePair>> out;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (seen[mask]) continue;
    for (const auto& move : moves) {
      std::uint64_t image = 0;
      for (std::size_t k = 0; k < num_pairs; ++k) {
        if (mask >> k & 1U) image |= std::uint64_t{1} << move[k];
      }
      seen[image] = true;
    }
    out.push_back(edges_from_mask(n, mask));
  }
  return out;
}

std::vector<std::vector<std::uint64_t>> compositions(std::uint64_t n, std::size_t s) {
  std::vector<std::vector<std::uint64_t>> out;
  if (s == 0) return out;
  if (s == 1) {
    if (n >= 1) out.push_back({n});
    return out;
  }
  for (std::uint64_t first = 1; first + (s - 1) <= n; ++first) {
    for (auto rest : compositions(n - first, s - 1)) {
      rest.insert(rest.begin(), first);
      out.push_back(std::move(rest));
    }
  }
  return out;
}

std::vector<ColorId> coloring_for(const std::vector<std::uint64_t>& profile) {
  std::vector<ColorId> colors;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    colors.insert(colors.end(), profile[k], static_cast<ColorId>(k));
  }
  return colors;
}

std::uint64_t brute_force_p3(const ColoredGraph& graph) {
  std::vector<NodePair> edges;
  graph.for_each_edge([&](NodeId u, NodeId v) { edges.push_back({u, v}); });
  std::uint64_t count = 0;
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      const auto& e = edges[a];
      const auto& f = edges[b];
      if (e.first == f.first || e.first == f.second || e.second == f.first ||
          e.second == f.second) {
        ++count;
      }
    }
  }
  return count;
}

std::set<std::pair<NodeId, NodeId>> bfs_distance2_pairs(const ColoredGraph& graph) {
  std::set<std::pair<NodeId, NodeId>> out;
  const auto n = static_cast<NodeId>(graph.num_nodes());
  for (NodeId src = 0; src < n; ++src) {
    std::vector<int> dist(n, -1);
    std::queue<NodeId> queue;
    dist[src] = 0;
    queue.push(src);
    while (!queue.empty()) {
      const NodeId x = queue.front();
      queue.pop();
      if (dist[x] == 2) continue;
      for (NodeId y : graph.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push(y);
        }
      }
    }
    for (NodeId v = src + 1; v < n; ++v) {
      if (dist[v] == 2) out.emplace(src, v);
    }
  }
  return out;
}

double worst_oracle_error(const MomentTable& closed, const NullSampleSummary& oracle) {
  double worst = 0.0;
  const std::size_t s = closed.num_colors();
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      worst = std::max(worst, rel(closed.mean_edges(i, j), oracle.edges(i, j).mean));
      worst = std::max(worst, rel(closed.var_edges(i, j), oracle.edges(i, j).variance));
    }
    worst = std::max(worst, rel(closed.mean_isolated[i], oracle.isolated[i].mean));
    worst = std::max(worst, rel(closed.var_isolated[i], oracle.isolated[i].variance));
  }
  return worst;
}

ColoredGraph relabel_nodes(const ColoredGraph& graph, const std::vector<NodeId>& perm) {
  std::vector<NodePair> edges;
  graph.for_each_edge([&](NodeId u, NodeId v) { edges.push_back({perm[u], perm[v]}); });
  std::vector<ColorId> colors(graph.num_nodes());
  for (NodeId v = 0; v < graph.num_nodes(); ++v) colors[perm[v]] = graph.color(v);
  return ColoredGraph::from_edges(graph.num_nodes(), edges, std::move(colors),
                                  graph.num_colors());
}

ColoredGraph relabel_colors(const ColoredGraph& graph, const std::vector<ColorId>& perm) {
  std::vector<NodePair> edges;
  graph.for_each_edge([&](NodeId u, NodeId v) { edges.push_back({u, v}); });
  std::vector<ColorId> colors(graph.num_nodes());
  for (NodeId v = 0; v < graph.num_nodes(); ++v) colors[v] = perm[graph.color(v)];
  return ColoredGraph::from_edges(graph.num_nodes(), edges, std::move(colors),
                                  graph.num_colors());
}

}  // namespace homophily::testing
