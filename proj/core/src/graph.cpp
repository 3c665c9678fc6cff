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

#include "homophily/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "homophily/error.hpp"

namespace homophily {

ColorProfile::ColorProfile(std::vector<std::uint64_t> counts)
    : counts_(std::move(counts)),
      total_(std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0})) {}

ColorProfile ColorProfile::from_colors(std::span<const ColorId> colors,
                                       std::size_t num_colors) {
  std::vector<std::uint64_t> counts(num_colors, 0);
  for (ColorId c : colors) {
    if (c >= num_colors) {
      throw DomainError("color index " + std::to_string(c) + " out of range [0, " +
                        std::to_string(num_colors) + ")");
    }
    ++counts[c];
  }
  return ColorProfile(std::move(counts));
}

bool ColorProfile::all_positive() const noexcept {
  return std::all_of(counts_.begin(), counts_.end(),
                     [](std::uint64_t c) { return c > 0; });
}

std::vector<ColorId> ColorProfile::color_word() const {
  std::vector<ColorId> word;
  word.reserve(total_);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    word.insert(word.end(), counts_[i], static_cast<ColorId>(i));
  }
  return word;
}

std::uint64_t DegreeHistogram::count(Degree d) const {
  auto it = std::lower_bound(bins.begin(), bins.end(), d,
                             [](const Bin& b, Degree x) { return b.degree < x; });
  return (it != bins.end() && it->degree == d) ? it->count : 0;
}

std::uint64_t DegreeHistogram::total_nodes() const {
  std::uint64_t total = 0;
  for (const auto& b : bins) total += b.count;
  return total;
}

NodeClassMap::Assign NodeClassMap::assign(std::string label, std::string cls) {
  if (auto it = index_.find(label); it != index_.end()) {
    return entries_[it->second].second == cls ? Assign::kDuplicate : Assign::kConflict;
  }
  index_.emplace(label, entries_.size());
  entries_.emplace_back(std::move(label), std::move(cls));
  return Assign::kInserted;
}

const std::string* NodeClassMap::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

ColoredGraph ColoredGraph::from_edges(std::uint64_t num_nodes,
                                      std::span<const NodePair> edges,
                                      std::vector<ColorId> colors,
                                      std::size_t num_colors,
                                      std::vector<std::string> node_labels,
                                      std::vector<std::string> color_labels) {
  if (num_nodes >= std::numeric_limits<NodeId>::max()) {
    throw InputError("graph has too many nodes: " + std::to_string(num_nodes));
  }
  if (colors.size() != num_nodes) {
    throw InputError("expected " + std::to_string(num_nodes) + " node colors, got " +
                     std::to_string(colors.size()));
  }
  if (!node_labels.empty() && node_labels.size() != num_nodes) {
    throw InputError("node label count does not match node count");
  }
  if (!color_labels.empty() && color_labels.size() != num_colors) {
    throw InputError("color label count does not match color count");
  }

  ColoredGraph g;
  for (ColorId c : colors) {
    if (c >= num_colors) {
      throw InputError("color index " + std::to_string(c) + " out of range");
    }
  }
  g.profile_ = ColorProfile::from_colors(colors, num_colors);
  for (std::size_t i = 0; i < num_colors; ++i) {
    if (g.profile_[i] == 0) {
      throw InputError("color class " +
                       (color_labels.empty() ? std::to_string(i) : color_labels[i]) +
                       " is empty");
    }
  }

  std::vector<std::uint64_t> degree(num_nodes, 0);
  for (const auto& e : edges) {
    if (e.first >= num_nodes || e.second >= num_nodes) {
      throw InputError("edge endpoint out of range");
    }
    if (e.first == e.second) {
      throw InputError("self-loop at node " +
                       (node_labels.empty() ? std::to_string(e.first)
                                            : node_labels[e.first]));
    }
    ++degree[e.first];
    ++degree[e.second];
  }

  std::vector<std::uint64_t> offsets(num_nodes + 1, 0);
  for (std::uint64_t v = 0; v < num_nodes; ++v) offsets[v + 1] = offsets[v] + degree[v];
  std::vector<NodeId> adjacency(offsets.back());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& e : edges) {
    adjacency[cursor[e.first]++] = e.second;
    adjacency[cursor[e.second]++] = e.first;
  }

  // Sort each row and squeeze out parallel edges in place.
  std::uint64_t write = 0;
  g.offsets_.assign(num_nodes + 1, 0);
  for (std::uint64_t v = 0; v < num_nodes; ++v) {
    auto first = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
    auto last = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) adjacency[write++] = *it;
    g.offsets_[v + 1] = write;
  }
  adjacency.resize(write);
  adjacency.shrink_to_fit();
  g.adjacency_ = std::move(adjacency);
  g.colors_ = std::move(colors);

  if (node_labels.empty()) {
    node_labels.reserve(num_nodes);
    for (std::uint64_t v = 0; v < num_nodes; ++v) node_labels.push_back(std::to_string(v));
  }
  if (color_labels.empty()) {
    for (std::size_t i = 0; i < num_colors; ++i) color_labels.push_back(std::to_string(i));
  }
  g.node_labels_ = std::move(node_labels);
  g.color_labels_ = std::move(color_labels);
  return g;
}

bool ColoredGraph::adjacent(NodeId u, NodeId v) const {
  auto nu = neighbors(u);
  auto nv = neighbors(v);
  if (nu.size() > nv.size()) return std::binary_search(nv.begin(), nv.end(), u);
  return std::binary_search(nu.begin(), nu.end(), v);
}

double ColoredGraph::density() const noexcept {
  const auto n = static_cast<double>(num_nodes());
  if (num_nodes() < 2) return 0.0;
  return 2.0 * static_cast<double>(num_edges()) / (n * (n - 1.0));
}

ColoredGraph build_graph(std::span<const std::pair<std::string, std::string>> edges,
                         const NodeClassMap& node_classes, const BuildOptions& options) {
  std::unordered_map<std::string_view, NodeId> index;
  index.reserve(node_classes.size());
  const auto& entries = node_classes.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    index.emplace(entries[i].first, static_cast<NodeId>(i));
  }

  std::vector<NodePair> indexed;
  indexed.reserve(edges.size());
  std::vector<bool> touched(entries.size(), false);
  for (const auto& [a, b] : edges) {
    auto ia = index.find(a);
    if (ia == index.end()) throw InputError("edge endpoint '" + a + "' has no class");
    auto ib = index.find(b);
    if (ib == index.end()) throw InputError("edge endpoint '" + b + "' has no class");
    if (ia->second == ib->second) throw InputError("self-loop at node '" + a + "'");
    indexed.push_back({ia->second, ib->second});
    touched[ia->second] = true;
    touched[ib->second] = true;
  }

  // Renumber retained nodes and assign colors by first appearance.
  std::vector<NodeId> remap(entries.size(), std::numeric_limits<NodeId>::max());
  std::vector<std::string> node_labels;
  std::vector<ColorId> colors;
  std::vector<std::string> color_labels;
  std::unordered_map<std::string_view, ColorId> color_index;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!options.keep_isolated && !touched[i]) continue;
    remap[i] = static_cast<NodeId>(node_labels.size());
    node_labels.push_back(entries[i].first);
    auto [it, inserted] =
        color_index.emplace(entries[i].second, static_cast<ColorId>(color_labels.size()));
    if (inserted) color_labels.push_back(entries[i].second);
    colors.push_back(it->second);
  }
  for (auto& e : indexed) e = {remap[e.first], remap[e.second]};

  const auto n = static_cast<std::uint64_t>(node_labels.size());
  const auto s = color_labels.size();
  return ColoredGraph::from_edges(n, indexed, std::move(colors), s, std::move(node_labels),
                                  std::move(color_labels));
}

std::uint64_t count_p3(const ColoredGraph& graph) {
  std::uint64_t total = 0;
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    const std::uint64_t d = graph.degree(v);
    total += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  return total;
}

std::uint64_t sum_squared_degrees(const ColoredGraph& graph) {
  std::uint64_t total = 0;
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    const std::uint64_t d = graph.degree(v);
    total += d * d;
  }
  return total;
}

std::uint64_t common_neighbor_count(const ColoredGraph& graph, NodeId u, NodeId v) {
  auto a = graph.neighbors(u);
  auto b = graph.neighbors(v);
  std::uint64_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

std::uint64_t union_neighborhood_size(const ColoredGraph& graph, NodeId u, NodeId v) {
  if (u == v) throw DomainError("union_neighborhood_size requires distinct nodes");
  return std::uint64_t{graph.degree(u)} + graph.degree(v) -
         common_neighbor_count(graph, u, v);
}

DegreeHistogram degree_histogram(const ColoredGraph& graph) {
  std::vector<std::uint64_t> counts;
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    const Degree d = graph.degree(v);
    if (d >= counts.size()) counts.resize(std::size_t{d} + 1, 0);
    ++counts[d];
  }
  DegreeHistogram h;
  for (std::size_t d = 0; d < counts.size(); ++d) {
    if (counts[d] > 0) h.bins.push_back({static_cast<Degree>(d), counts[d]});
  }
  return h;
}

std::vector<NodePair> distance2_pairs(const ColoredGraph& graph) {
  std::vector<NodePair> pairs;
  for_each_distance2_pair(graph, [&](NodeId u, NodeId v, std::uint64_t) {
    pairs.push_back({u, v});
  });
  return pairs;
}

}  // namespace homophily
