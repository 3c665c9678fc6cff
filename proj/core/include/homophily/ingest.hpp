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

// Text formats (UTF-8, '#' starts a comment line, blank lines ignored,
// columns separated by tabs or spaces):
//
//   node file       <label> <class>
//   attribute file  <label> [<value>]        (value may be missing)
//   edge file       <label> <label> [<weight 0..999>]
//   bucket config   <lo>,<hi>,<class>  per half-open interval [lo, hi)
//                   fallback,<class>
//   alias config    <from>,<to>              class renaming
//
// An edge file whose first data line has a non-integer third column is taken
// to start with a header (as STRING exports do) and that line is skipped.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homophily/graph.hpp"

namespace homophily {

inline constexpr int kMaxEdgeWeight = 999;

struct RawEdgeRecord {
  std::string source;
  std::string target;
  std::optional<int> weight;

  friend bool operator==(const RawEdgeRecord&, const RawEdgeRecord&) = default;
};

using LabelEdge = std::pair<std::string, std::string>;

/// Label -> class. Identical repeated lines are tolerated; a label listed
/// with two classes, or a line without exactly two columns, is an InputError
/// carrying the line number.
NodeClassMap parse_node_file(std::istream& in);

/// Label -> optional raw attribute value (one or two columns).
std::vector<std::pair<std::string, std::optional<std::string>>> parse_attribute_file(
    std::istream& in);

/// Edge records, dropping those with weight < cutoff (the cutoff is
/// inclusive: weight == cutoff is kept). A cutoff on an unweighted file, a
/// weight outside [0, 999], or mixed 2/3-column lines are InputErrors.
std::vector<RawEdgeRecord> parse_edge_file(std::istream& in,
                                           std::optional<int> cutoff = std::nullopt);

/// Half-open numeric intervals mapped to classes, with a fallback class for
/// values that are missing, non-numeric, or outside every interval.
class BucketingRule {
 public:
  struct Interval {
    double lo;
    double hi;
    std::string label;
  };

  /// Throws InputError on overlapping or empty intervals, or a fallback
  /// label that is also an interval label.
  BucketingRule(std::vector<Interval> intervals, std::string fallback);

  const std::string& classify(const std::optional<std::string>& value) const;

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  const std::string& fallback() const noexcept { return fallback_; }

 private:
  std::vector<Interval> intervals_;
  std::string fallback_;
};

BucketingRule parse_bucket_config(std::istream& in);

/// Class renaming map, e.g. {R: X, S: X}.
std::map<std::string, std::string> parse_alias_config(std::istream& in);

/// Replaces classes found in `aliases`; other classes are kept.
NodeClassMap apply_aliases(const NodeClassMap& nodes,
                           const std::map<std::string, std::string>& aliases);

NodeClassMap bucket_attribute(
    const std::vector<std::pair<std::string, std::optional<std::string>>>& attributes,
    const BucketingRule& rule);

struct MergedNodes {
  NodeClassMap nodes;
  std::vector<LabelEdge> edges;
};

/// Collapses labels that differ only by trailing matches of the regex
/// `suffix_pattern` (default "_[0-9]+", stripped repeatedly) onto the base
/// label. A merged node whose parts disagree on the class gets
/// `conflict_class`. Edges are re-targeted; resulting duplicates and
/// self-loops are dropped. Applying it twice is the same as once.
MergedNodes merge_suffix_nodes(const NodeClassMap& nodes, const std::vector<LabelEdge>& edges,
                               const std::string& suffix_pattern,
                               const std::string& conflict_class);

/// Undirected edges {u, v} for which both (u, v) and (v, u) are present,
/// each reported once as (u, v) in order of first appearance of the pair.
std::vector<LabelEdge> mutual_only(const std::vector<LabelEdge>& directed);

std::vector<LabelEdge> to_label_edges(const std::vector<RawEdgeRecord>& records);

/// Preprocessing applied by load_colored_graph, in this order: parse nodes
/// (or bucket attributes), apply aliases, parse edges with cutoff, keep
/// mutual pairs, merge suffixed labels, build the graph.
struct IngestOptions {
  std::optional<int> cutoff;
  std::optional<std::string> merge_suffix;
  std::string conflict_class = "X";
  bool mutual_only = false;
  std::optional<std::filesystem::path> bucket_config;
  std::optional<std::filesystem::path> alias_config;
  bool keep_isolated = false;
};

/// Reads and preprocesses a node/edge file pair. InputErrors name the file.
ColoredGraph load_colored_graph(const std::filesystem::path& node_file,
                                const std::filesystem::path& edge_file,
                                const IngestOptions& options = {});

/// Writes the canonical tab-separated node and edge files for `graph`.
void write_node_file(std::ostream& out, const ColoredGraph& graph);
void write_edge_file(std::ostream& out, const ColoredGraph& graph);

}  // namespace homophily
