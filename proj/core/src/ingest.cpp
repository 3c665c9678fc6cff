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

#include "homophily/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "homophily/error.hpp"

namespace homophily {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

// Calls fn(tokens_or_line, line_number) for every non-blank, non-comment line.
template <typename Fn>
void for_each_data_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    fn(view, number);
  }
}

std::optional<int> parse_int(std::string_view token) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_double(std::string_view token) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string pair_key(std::string_view a, std::string_view b) {
  std::string key;
  key.reserve(a.size() + b.size() + 1);
  key.append(a);
  key.push_back('\0');
  key.append(b);
  return key;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file", path.string());
  return in;
}

template <typename Fn>
auto with_file(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in = open_input(path);
  try {
    return fn(in);
  } catch (const InputError& e) {
    throw e.with_source(path.string());
  }
}

}  // namespace

NodeClassMap parse_node_file(std::istream& in) {
  NodeClassMap nodes;
  for_each_data_line(in, [&](std::string_view line, std::size_t number) {
    const auto tokens = split_whitespace(line);
    if (tokens.size() != 2) {
      throw InputError("expected '<label> <class>', got " + std::to_string(tokens.size()) +
                           " columns",
                       {}, number);
    }
    const std::string label(tokens[0]);
    if (nodes.assign(label, std::string(tokens[1])) == NodeClassMap::Assign::kConflict) {
      throw InputError("node '" + label + "' listed with two different classes ('" +
                           *nodes.find(label) + "' and '" + std::string(tokens[1]) + "')",
                       {}, number);
    }
  });
  return nodes;
}

std::vector<std::pair<std::string, std::optional<std::string>>> parse_attribute_file(
    std::istream& in) {
  std::vector<std::pair<std::string, std::optional<std::string>>> out;
  std::unordered_map<std::string, std::size_t> seen;
  for_each_data_line(in, [&](std::string_view line, std::size_t number) {
    const auto tokens = split_whitespace(line);
    if (tokens.empty() || tokens.size() > 2) {
      throw InputError("expected '<label> [<value>]'", {}, number);
    }
    std::string label(tokens[0]);
    std::optional<std::string> value;
    if (tokens.size() == 2) value = std::string(tokens[1]);
    if (auto it = seen.find(label); it != seen.end()) {
      if (out[it->second].second != value) {
        throw InputError("node '" + label + "' listed with two different values", {}, number);
      }
      return;
    }
    seen.emplace(label, out.size());
    out.emplace_back(std::move(label), std::move(value));
  });
  return out;
}

std::vector<RawEdgeRecord> parse_edge_file(std::istream& in, std::optional<int> cutoff) {
  std::vector<RawEdgeRecord> records;
  std::size_t columns = 0;
  for_each_data_line(in, [&](std::string_view line, std::size_t number) {
    const auto tokens = split_whitespace(line);
    if (tokens.size() != 2 && tokens.size() != 3) {
      throw InputError("expected '<label> <label> [<weight>]', got " +
                           std::to_string(tokens.size()) + " columns",
                       {}, number);
    }
    if (columns == 0) {
      columns = tokens.size();
      if (columns == 3 && !parse_int(tokens[2])) return;  // header line
      if (columns == 2 && cutoff) {
        throw InputError("a weight cutoff was given but the edge file is unweighted", {},
                         number);
      }
    } else if (tokens.size() != columns) {
      throw InputError("inconsistent column count (expected " + std::to_string(columns) + ")",
                       {}, number);
    }
    RawEdgeRecord record{std::string(tokens[0]), std::string(tokens[1]), std::nullopt};
    if (tokens.size() == 3) {
      const auto weight = parse_int(tokens[2]);
      if (!weight || *weight < 0 || *weight > kMaxEdgeWeight) {
        throw InputError("edge weight '" + std::string(tokens[2]) + "' is not an integer in [0, " +
                             std::to_string(kMaxEdgeWeight) + "]",
                         {}, number);
      }
      if (cutoff && *weight < *cutoff) return;
      record.weight = *weight;
    }
    records.push_back(std::move(record));
  });
  return records;
}

BucketingRule::BucketingRule(std::vector<Interval> intervals, std::string fallback)
    : intervals_(std::move(intervals)), fallback_(std::move(fallback)) {
  if (fallback_.empty()) throw InputError("bucketing rule needs a fallback class");
  for (const auto& iv : intervals_) {
    if (!(iv.lo < iv.hi)) throw InputError("empty interval for class '" + iv.label + "'");
    if (iv.label == fallback_) {
      throw InputError("fallback class '" + fallback_ + "' is also an interval class");
    }
  }
  auto sorted = intervals_;
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k].lo < sorted[k - 1].hi) {
      throw InputError("intervals for classes '" + sorted[k - 1].label + "' and '" +
                       sorted[k].label + "' overlap");
    }
  }
}

const std::string& BucketingRule::classify(const std::optional<std::string>& value) const {
  if (!value) return fallback_;
  const auto x = parse_double(*value);
  if (!x) return fallback_;
  for (const auto& iv : intervals_) {
    if (*x >= iv.lo && *x < iv.hi) return iv.label;
  }
  return fallback_;
}

BucketingRule parse_bucket_config(std::istream& in) {
  std::vector<BucketingRule::Interval> intervals;
  std::optional<std::string> fallback;
  for_each_data_line(in, [&](std::string_view line, std::size_t number) {
    const auto fields = split_commas(line);
    if (fields.size() == 2 && fields[0] == "fallback") {
      if (fallback) throw InputError("fallback class given twice", {}, number);
      fallback = std::string(fields[1]);
      return;
    }
    if (fields.size() != 3) {
      throw InputError("expected '<lo>,<hi>,<class>' or 'fallback,<class>'", {}, number);
    }
    const auto lo = parse_double(fields[0]);
    const auto hi = parse_double(fields[1]);
    if (!lo || !hi || fields[2].empty()) {
      throw InputError("malformed interval '" + std::string(line) + "'", {}, number);
    }
    intervals.push_back({*lo, *hi, std::string(fields[2])});
  });
  if (!fallback) throw InputError("bucket config has no 'fallback,<class>' line");
  return BucketingRule(std::move(intervals), std::move(*fallback));
}

std::map<std::string, std::string> parse_alias_config(std::istream& in) {
  std::map<std::string, std::string> aliases;
  for_each_data_line(in, [&](std::string_view line, std::size_t number) {
    const auto fields = split_commas(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw InputError("expected '<from>,<to>'", {}, number);
    }
    auto [it, inserted] = aliases.emplace(std::string(fields[0]), std::string(fields[1]));
    if (!inserted && it->second != fields[1]) {
      throw InputError("class '" + it->first + "' aliased twice", {}, number);
    }
  });
  return aliases;
}

NodeClassMap apply_aliases(const NodeClassMap& nodes,
                           const std::map<std::string, std::string>& aliases) {
  NodeClassMap out;
  for (const auto& [label, cls] : nodes.entries()) {
    auto it = aliases.find(cls);
    out.assign(label, it == aliases.end() ? cls : it->second);
  }
  return out;
}

NodeClassMap bucket_attribute(
    const std::vector<std::pair<std::string, std::optional<std::string>>>& attributes,
    const BucketingRule& rule) {
  NodeClassMap out;
  for (const auto& [label, value] : attributes) out.assign(label, rule.classify(value));
  return out;
}

MergedNodes merge_suffix_nodes(const NodeClassMap& nodes, const std::vector<LabelEdge>& edges,
                               const std::string& suffix_pattern,
                               const std::string& conflict_class) {
  const std::regex suffix("(?:" + suffix_pattern + ")$");
  std::unordered_map<std::string, std::string> base_cache;
  auto base_of = [&](const std::string& label) -> const std::string& {
    if (auto it = base_cache.find(label); it != base_cache.end()) return it->second;
    std::string base = label;
    std::smatch match;
    while (std::regex_search(base, match, suffix) && match.position(0) > 0 &&
           match.length(0) > 0) {
      base.resize(static_cast<std::size_t>(match.position(0)));
    }
    return base_cache.emplace(label, std::move(base)).first->second;
  };

  std::vector<std::pair<std::string, std::string>> merged;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& [label, cls] : nodes.entries()) {
    const std::string& base = base_of(label);
    if (auto it = index.find(base); it != index.end()) {
      if (merged[it->second].second != cls) merged[it->second].second = conflict_class;
    } else {
      index.emplace(base, merged.size());
      merged.emplace_back(base, cls);
    }
  }

  MergedNodes out;
  for (auto& [label, cls] : merged) out.nodes.assign(std::move(label), std::move(cls));

  std::unordered_set<std::string> seen;
  for (const auto& [a, b] : edges) {
    const std::string& ba = base_of(a);
    const std::string& bb = base_of(b);
    if (ba == bb) continue;
    const auto key = ba < bb ? pair_key(ba, bb) : pair_key(bb, ba);
    if (seen.insert(key).second) out.edges.emplace_back(ba, bb);
  }
  return out;
}

std::vector<LabelEdge> mutual_only(const std::vector<LabelEdge>& directed) {
  std::unordered_set<std::string> arcs;
  arcs.reserve(directed.size());
  for (const auto& [a, b] : directed) arcs.insert(pair_key(a, b));
  std::vector<LabelEdge> out;
  std::unordered_set<std::string> emitted;
  for (const auto& [a, b] : directed) {
    if (a == b || !arcs.contains(pair_key(b, a))) continue;
    const auto key = a < b ? pair_key(a, b) : pair_key(b, a);
    if (emitted.insert(key).second) out.emplace_back(a, b);
  }
  return out;
}

std::vector<LabelEdge> to_label_edges(const std::vector<RawEdgeRecord>& records) {
  std::vector<LabelEdge> edges;
  edges.reserve(records.size());
  for (const auto& r : records) edges.emplace_back(r.source, r.target);
  return edges;
}

ColoredGraph load_colored_graph(const std::filesystem::path& node_file,
                                const std::filesystem::path& edge_file,
                                const IngestOptions& options) {
  NodeClassMap nodes;
  if (options.bucket_config) {
    const auto rule = with_file(*options.bucket_config,
                                [](std::istream& in) { return parse_bucket_config(in); });
    const auto attributes =
        with_file(node_file, [](std::istream& in) { return parse_attribute_file(in); });
    nodes = bucket_attribute(attributes, rule);
  } else {
    nodes = with_file(node_file, [](std::istream& in) { return parse_node_file(in); });
  }
  if (options.alias_config) {
    const auto aliases = with_file(*options.alias_config,
                                   [](std::istream& in) { return parse_alias_config(in); });
    nodes = apply_aliases(nodes, aliases);
  }

  auto edges = to_label_edges(with_file(
      edge_file, [&](std::istream& in) { return parse_edge_file(in, options.cutoff); }));
  if (options.mutual_only) edges = mutual_only(edges);
  if (options.merge_suffix) {
    auto merged = merge_suffix_nodes(nodes, edges, *options.merge_suffix, options.conflict_class);
    nodes = std::move(merged.nodes);
    edges = std::move(merged.edges);
  }

  try {
    return build_graph(edges, nodes, BuildOptions{options.keep_isolated});
  } catch (const InputError& e) {
    throw e.with_source(edge_file.string());
  }
}

void write_node_file(std::ostream& out, const ColoredGraph& graph) {
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    out << graph.node_label(v) << '\t' << graph.color_labels()[graph.color(v)] << '\n';
  }
}

void write_edge_file(std::ostream& out, const ColoredGraph& graph) {
  graph.for_each_edge([&](NodeId u, NodeId v) {
    out << graph.node_label(u) << '\t' << graph.node_label(v) << '\n';
  });
}

}  // namespace homophily
