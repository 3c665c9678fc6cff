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
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace homophily {

using NodeId = std::uint32_t;
using ColorId = std::uint32_t;
using Degree = std::uint32_t;

struct NodePair {
  NodeId first;
  NodeId second;

  friend bool operator==(const NodePair&, const NodePair&) = default;
  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

/// Class sizes c = (c_1, ..., c_s) of a coloring.
class ColorProfile {
 public:
  ColorProfile() = default;
  explicit ColorProfile(std::vector<std::uint64_t> counts);

  /// Counts the colors in `colors`, which must all be below `num_colors`.
  static ColorProfile from_colors(std::span<const ColorId> colors,
                                  std::size_t num_colors);

  std::size_t size() const noexcept { return counts_.size(); }
  std::uint64_t operator[](std::size_t i) const { return counts_[i]; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }

  /// True when every class is nonempty.
  bool all_positive() const noexcept;

  /// The color word 0^{c_1} 1^{c_2} ... (s-1)^{c_s}, sorted ascending.
  std::vector<ColorId> color_word() const;

  friend bool operator==(const ColorProfile&, const ColorProfile&) = default;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Number of nodes per degree value, sorted by degree. Only degrees that
/// occur are stored.
struct DegreeHistogram {
  struct Bin {
    Degree degree;
    std::uint64_t count;

    friend bool operator==(const Bin&, const Bin&) = default;
  };
  std::vector<Bin> bins;

  std::uint64_t count(Degree d) const;
  Degree max_degree() const noexcept {
    return bins.empty() ? 0 : bins.back().degree;
  }
  std::uint64_t total_nodes() const;
};

/// Insertion-ordered map from node label to class label.
class NodeClassMap {
 public:
  enum class Assign { kInserted, kDuplicate, kConflict };

  /// Adds `label -> cls`. A repeated identical pair is reported as
  /// kDuplicate and ignored; a repeated label with another class is
  /// kConflict and leaves the map unchanged.
  Assign assign(std::string label, std::string cls);

  const std::string* find(std::string_view label) const;
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Immutable simple undirected graph with one color per node.
///
/// Adjacency is stored in CSR form with every neighbor list sorted, so
/// set operations on neighborhoods are linear merges. Safe to share across
/// threads once built.
class ColoredGraph {
 public:
  ColoredGraph() = default;

  /// Builds from dense node indices. Parallel edges are collapsed; a
  /// self-loop, an out-of-range endpoint or color, or an empty color class
  /// is rejected with InputError. Labels are optional; when empty, node i is
  /// labelled by its index and color k by its index.
  static ColoredGraph from_edges(std::uint64_t num_nodes,
                                 std::span<const NodePair> edges,
                                 std::vector<ColorId> colors,
                                 std::size_t num_colors,
                                 std::vector<std::string> node_labels = {},
                                 std::vector<std::string> color_labels = {});

  std::uint64_t num_nodes() const noexcept { return colors_.size(); }
  std::uint64_t num_edges() const noexcept { return adjacency_.size() / 2; }
  std::size_t num_colors() const noexcept { return color_labels_.size(); }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  Degree degree(NodeId v) const {
    return static_cast<Degree>(offsets_[v + 1] - offsets_[v]);
  }
  bool adjacent(NodeId u, NodeId v) const;

  ColorId color(NodeId v) const { return colors_[v]; }
  std::span<const ColorId> colors() const noexcept { return colors_; }
  const ColorProfile& profile() const noexcept { return profile_; }

  const std::string& node_label(NodeId v) const { return node_labels_[v]; }
  const std::vector<std::string>& node_labels() const noexcept { return node_labels_; }
  const std::vector<std::string>& color_labels() const noexcept { return color_labels_; }

  /// Calls fn(u, v) once per edge with u < v, in increasing (u, v) order.
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (NodeId u = 0; u < num_nodes(); ++u) {
      for (NodeId v : neighbors(u)) {
        if (u < v) fn(u, v);
      }
    }
  }

  /// 2m / (n (n - 1)); zero for n < 2.
  double density() const noexcept;

 private:
  std::vector<std::uint64_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<ColorId> colors_;
  ColorProfile profile_;
  std::vector<std::string> node_labels_;
  std::vector<std::string> color_labels_;
};

struct BuildOptions {
  /// Keep nodes that end up without edges. Off by default, matching the
  /// usual preprocessing of interaction networks.
  bool keep_isolated = false;
};

/// Builds a colored graph from labelled edges. Nodes are numbered in the
/// order of `node_classes`; class labels get dense color indices in order of
/// first appearance among the retained nodes.
///
/// Throws InputError for an endpoint without a class or for a self-loop.
ColoredGraph build_graph(std::span<const std::pair<std::string, std::string>> edges,
                         const NodeClassMap& node_classes,
                         const BuildOptions& options = {});

/// Number of (not necessarily induced) 2-edge paths: sum over v of C(deg v, 2).
std::uint64_t count_p3(const ColoredGraph& graph);

/// Sum over v of deg(v)^2.
std::uint64_t sum_squared_degrees(const ColoredGraph& graph);

/// |N(u) ∩ N(v)| by sorted merge.
std::uint64_t common_neighbor_count(const ColoredGraph& graph, NodeId u, NodeId v);

/// |N(u) ∪ N(v)| = deg u + deg v - |N(u) ∩ N(v)|. Throws DomainError if u == v.
std::uint64_t union_neighborhood_size(const ColoredGraph& graph, NodeId u, NodeId v);

DegreeHistogram degree_histogram(const ColoredGraph& graph);

/// Visits every unordered non-adjacent pair {u, v} (u < v) that has at least
/// one common neighbor, exactly once, as fn(u, v, common_count).
///
/// Each source u counts its two-hop walks in a dense per-node counter, so
/// the total work is O(sum_z deg(z)^2) with O(n) scratch memory and no
/// global pair set. Visiting order is deterministic.
template <typename Fn>
void for_each_distance2_pair(const ColoredGraph& graph, Fn&& fn) {
  const std::uint64_t n = graph.num_nodes();
  std::vector<std::uint32_t> walks(n, 0);
  std::vector<NodeId> adjacent_stamp(n, 0);  // holds u + 1 while u is the source
  std::vector<NodeId> touched;
  for (NodeId u = 0; u < n; ++u) {
    const NodeId stamp = u + 1;
    for (NodeId z : graph.neighbors(u)) adjacent_stamp[z] = stamp;
    for (NodeId z : graph.neighbors(u)) {
      for (NodeId w : graph.neighbors(z)) {
        if (w <= u || adjacent_stamp[w] == stamp) continue;
        if (walks[w]++ == 0) touched.push_back(w);
      }
    }
    for (NodeId w : touched) {
      fn(u, w, static_cast<std::uint64_t>(walks[w]));
      walks[w] = 0;
    }
    touched.clear();
  }
}

/// Materialized form of for_each_distance2_pair, in visiting order.
std::vector<NodePair> distance2_pairs(const ColoredGraph& graph);

}  // namespace homophily
