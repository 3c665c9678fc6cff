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

#include "homophily/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "homophily/combinatorics.hpp"
#include "homophily/detail/compensated_sum.hpp"
#include "homophily/error.hpp"

namespace homophily {
namespace {

using LongSum = detail::CompensatedSum<long double>;

constexpr long double kRoundingFloor = 1e-12L;
constexpr long double kClampTolerance = 1e-6L;

void validate_profile(std::uint64_t n, const ColorProfile& profile) {
  if (profile.total() != n) {
    throw DomainError("profile sums to " + std::to_string(profile.total()) +
                      " but the graph has " + std::to_string(n) + " nodes");
  }
  if (n < 2) throw DomainError("null-model moments need at least 2 nodes");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile[i] == 0) {
      throw DomainError("color class " + std::to_string(i) + " is empty");
    }
  }
}

long double ld(std::uint64_t x) { return static_cast<long double>(x); }

// c_i c_j / n^{2}
long double pair_ratio(std::uint64_t n, std::uint64_t ci, std::uint64_t cj) {
  return (ld(ci) / ld(n)) * (ld(cj) / ld(n - 1));
}

// c_i c_j^{2} / n^{3}; c_i >= 1 so c_j <= n - 1.
long double one_two_ratio(std::uint64_t n, std::uint64_t ci, std::uint64_t cj) {
  if (cj < 2) return 0.0L;
  return (ld(ci) / ld(n)) * falling_ratio_ld(cj, n - 1, 2);
}

// c_i^{2} c_j^{2} / n^{4}
long double two_two_ratio(std::uint64_t n, std::uint64_t ci, std::uint64_t cj) {
  if (ci < 2 || cj < 2) return 0.0L;
  return falling_ratio_ld(ci, n, 2) * falling_ratio_ld(cj, n - 2, 2);
}

std::string edge_name(std::size_t i, std::size_t j) {
  return "var M[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

}  // namespace

double VarianceValue::cancellation() const {
  if (value > 0.0) return largest_term / value;
  return largest_term > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

VarianceValue combine_variance_terms(std::span<const long double> terms,
                                     const std::string& what) {
  LongSum sum;
  long double largest = 0.0L;
  for (long double t : terms) {
    sum += t;
    largest = std::max(largest, std::fabs(t));
  }
  long double value = sum.value();
  VarianceValue out;
  out.largest_term = static_cast<double>(largest);
  if (std::fabs(value) <= kRoundingFloor * largest) {
    value = 0.0L;
  } else if (value < 0.0L) {
    if (value < -kClampTolerance * largest) {
      std::ostringstream msg;
      msg << what << " is negative (" << static_cast<double>(value)
          << ") beyond rounding tolerance; largest term " << out.largest_term;
      throw NumericError(msg.str());
    }
    value = 0.0L;
    out.clamped = true;
  }
  out.value = static_cast<double>(value);
  return out;
}

EdgeBlockCounts block_edge_counts(const ColoredGraph& graph) {
  const std::size_t s = graph.num_colors();
  EdgeBlockCounts counts{SquareMatrix<std::uint64_t>(s, 0), std::vector<std::uint64_t>(s, 0)};
  for (NodeId u = 0; u < graph.num_nodes(); ++u) {
    const ColorId cu = graph.color(u);
    bool same_color_neighbor = false;
    for (NodeId v : graph.neighbors(u)) {
      const ColorId cv = graph.color(v);
      same_color_neighbor |= (cv == cu);
      if (u < v) ++counts.edges(cu, cv);
    }
    if (!same_color_neighbor) ++counts.isolated[cu];
  }
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      const auto total = counts.edges(i, j) + counts.edges(j, i);
      counts.edges.set_symmetric(i, j, total);
    }
  }
  return counts;
}

SquareMatrix<double> expected_edges(std::uint64_t n, std::uint64_t m,
                                    const ColorProfile& profile) {
  if (n < 2) throw DomainError("expected_edges requires n >= 2");
  if (profile.total() != n) throw DomainError("profile does not sum to n");
  const std::size_t s = profile.size();
  SquareMatrix<double> mean(s, 0.0);
  for (std::size_t i = 0; i < s; ++i) {
    mean(i, i) = static_cast<double>(ld(m) * falling_ratio_ld(profile[i], n, 2));
    for (std::size_t j = i + 1; j < s; ++j) {
      mean.set_symmetric(i, j,
                         static_cast<double>(2.0L * ld(m) * pair_ratio(n, profile[i], profile[j])));
    }
  }
  return mean;
}

EdgeVariances edge_variances(std::uint64_t n, std::uint64_t m, std::uint64_t p3,
                             const ColorProfile& profile) {
  if (n < 2) throw DomainError("edge_variances requires n >= 2");
  if (profile.total() != n) throw DomainError("profile does not sum to n");
  const std::size_t s = profile.size();
  EdgeVariances out{SquareMatrix<double>(s, 0.0), SquareMatrix<double>(s, 1.0), {}};
  const long double lm = ld(m);
  const long double paths = ld(p3);
  const long double ordered_edge_pairs = lm * (lm - 1.0L);  // 2 C(m, 2)

  auto record = [&](std::size_t i, std::size_t j, const VarianceValue& v) {
    out.values.set_symmetric(i, j, v.value);
    out.cancellation.set_symmetric(i, j, v.cancellation());
    if (v.clamped) out.warnings.push_back(edge_name(i, j) + " clamped to 0");
  };

  for (std::size_t i = 0; i < s; ++i) {
    const std::uint64_t c = profile[i];
    const long double p2 = falling_ratio_ld(c, n, 2);
    const long double p3r = falling_ratio_ld(c, n, 3);
    const long double p4 = falling_ratio_ld(c, n, 4);
    const long double mean = lm * p2;
    const long double terms[] = {mean, -mean * mean, 2.0L * p3r * paths, -2.0L * p4 * paths,
                                 p4 * ordered_edge_pairs};
    record(i, i, combine_variance_terms(terms, edge_name(i, i)));

    for (std::size_t j = i + 1; j < s; ++j) {
      const std::uint64_t cj = profile[j];
      const long double q2 = pair_ratio(n, c, cj);
      const long double q3 = one_two_ratio(n, c, cj) + one_two_ratio(n, cj, c);
      const long double q4 = two_two_ratio(n, c, cj);
      const long double mean_ij = 2.0L * lm * q2;
      const long double terms_ij[] = {mean_ij, -mean_ij * mean_ij, 2.0L * q3 * paths,
                                      -8.0L * q4 * paths, 4.0L * q4 * ordered_edge_pairs};
      record(i, j, combine_variance_terms(terms_ij, edge_name(i, j)));
    }
  }
  return out;
}

SquareMatrix<double> variance_edges(std::uint64_t n, std::uint64_t m, std::uint64_t p3,
                                    const ColorProfile& profile) {
  return edge_variances(n, m, p3, profile).values;
}

double expected_isolated(const ColoredGraph& graph, const ColorProfile& profile,
                         std::size_t color) {
  const std::uint64_t n = graph.num_nodes();
  if (profile.total() != n) throw DomainError("profile does not sum to n");
  if (color >= profile.size()) throw DomainError("color index out of range");
  const std::uint64_t c = profile[color];
  if (c == 0) throw DomainError("expected_isolated requires a nonempty color class");

  const DegreeHistogram hist = degree_histogram(graph);
  const FallingRatioSequence survive(n - c, n - 1, hist.max_degree());
  LongSum sum;
  for (const auto& bin : hist.bins) sum += ld(bin.count) * survive[bin.degree];
  return static_cast<double>(ld(c) / ld(n) * sum.value());
}

namespace {

long double pair_sum_naive(const ColoredGraph& graph, const FallingRatioSequence& ratio) {
  const std::uint64_t n = graph.num_nodes();
  std::vector<NodeId> stamp(n, 0);
  LongSum sum;
  for (NodeId u = 0; u < n; ++u) {
    const NodeId mark = u + 1;
    for (NodeId w : graph.neighbors(u)) stamp[w] = mark;
    for (NodeId v = 0; v < n; ++v) {
      if (v == u || stamp[v] == mark) continue;
      std::uint64_t common = 0;
      for (NodeId w : graph.neighbors(v)) common += (stamp[w] == mark);
      const std::uint64_t b = std::uint64_t{graph.degree(u)} + graph.degree(v) - common;
      sum += ratio[b];
    }
  }
  return sum.value();
}

// Sum over all ordered pairs (including u == v) with b'(u,v) = deg u + deg v,
// minus adjacent ordered pairs and the diagonal (both still at b'), plus the
// exact-minus-approximate correction on distance-2 pairs, where the two
// neighborhoods overlap.
long double pair_sum_fast(const ColoredGraph& graph, const FallingRatioSequence& ratio) {
  const DegreeHistogram hist = degree_histogram(graph);

  LongSum all_pairs;
  for (const auto& a : hist.bins) {
    for (const auto& b : hist.bins) {
      all_pairs += ld(a.count) * ld(b.count) * ratio[std::uint64_t{a.degree} + b.degree];
    }
  }

  LongSum adjacent;
  for (NodeId u = 0; u < graph.num_nodes(); ++u) {
    const std::uint64_t du = graph.degree(u);
    for (NodeId v : graph.neighbors(u)) adjacent += ratio[du + graph.degree(v)];
  }

  LongSum diagonal;
  for (const auto& a : hist.bins) diagonal += ld(a.count) * ratio[2 * std::uint64_t{a.degree}];

  LongSum correction;
  for_each_distance2_pair(graph, [&](NodeId u, NodeId v, std::uint64_t common) {
    const std::uint64_t approx = std::uint64_t{graph.degree(u)} + graph.degree(v);
    correction += 2.0L * (ratio[approx - common] - ratio[approx]);
  });

  LongSum total;
  total += all_pairs.value();
  total -= adjacent.value();
  total -= diagonal.value();
  total += correction.value();
  return total.value();
}

}  // namespace

long double isolated_pair_sum(const ColoredGraph& graph, const ColorProfile& profile,
                              std::size_t color, PairSumMethod method) {
  const std::uint64_t n = graph.num_nodes();
  if (profile.total() != n) throw DomainError("profile does not sum to n");
  if (color >= profile.size()) throw DomainError("color index out of range");
  const std::uint64_t c = profile[color];
  if (c < 2) return 0.0L;
  const std::uint64_t max_b = method == PairSumMethod::kFast
                                  ? 2 * std::uint64_t{degree_histogram(graph).max_degree()}
                                  : n;
  const FallingRatioSequence ratio(n - c, n - 2, max_b);
  return method == PairSumMethod::kFast ? pair_sum_fast(graph, ratio)
                                        : pair_sum_naive(graph, ratio);
}

IsolatedMoments isolated_moments(const ColoredGraph& graph, const ColorProfile& profile,
                                 std::size_t color, PairSumMethod method) {
  const std::uint64_t n = graph.num_nodes();
  if (n < 2) throw DomainError("isolated-node variance requires n >= 2");
  IsolatedMoments out;
  out.mean = expected_isolated(graph, profile, color);
  const long double mean = out.mean;
  const long double both = falling_ratio_ld(profile[color], n, 2);
  const long double pairs = both > 0.0L ? isolated_pair_sum(graph, profile, color, method)
                                        : 0.0L;
  const long double terms[] = {mean, -mean * mean, both * pairs};
  out.variance = combine_variance_terms(terms, "var L[" + std::to_string(color) + "]");
  return out;
}

double variance_isolated_naive(const ColoredGraph& graph, const ColorProfile& profile,
                               std::size_t color) {
  return isolated_moments(graph, profile, color, PairSumMethod::kNaive).variance.value;
}

double variance_isolated_fast(const ColoredGraph& graph, const ColorProfile& profile,
                              std::size_t color) {
  return isolated_moments(graph, profile, color, PairSumMethod::kFast).variance.value;
}

MomentTable compute_moments(const ColoredGraph& graph, const ColorProfile& profile,
                            const MomentOptions& options) {
  const std::uint64_t n = graph.num_nodes();
  validate_profile(n, profile);
  const std::size_t s = profile.size();

  MomentTable table;
  table.mean_edges = expected_edges(n, graph.num_edges(), profile);
  EdgeVariances ev = edge_variances(n, graph.num_edges(), count_p3(graph), profile);
  table.var_edges = std::move(ev.values);
  table.edge_cancellation = std::move(ev.cancellation);
  table.warnings = std::move(ev.warnings);
  table.mean_isolated.assign(s, 0.0);
  table.var_isolated.assign(s, 0.0);
  table.isolated_cancellation.assign(s, 1.0);
  if (options.edges_only) return table;

  std::vector<IsolatedMoments> results(s);
  std::vector<std::exception_ptr> errors(s);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < s;) {
      try {
        results[i] = isolated_moments(graph, profile, i, options.method);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, options.threads), s));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t i = 0; i < s; ++i) {
    table.mean_isolated[i] = results[i].mean;
    table.var_isolated[i] = results[i].variance.value;
    table.isolated_cancellation[i] = results[i].variance.cancellation();
    if (results[i].variance.clamped) {
      table.warnings.push_back("var L[" + std::to_string(i) + "] clamped to 0");
    }
  }
  return table;
}

MomentTable compute_moments(const ColoredGraph& graph, const MomentOptions& options) {
  return compute_moments(graph, graph.profile(), options);
}

ZScores zscore_arrays(const EdgeBlockCounts& counts, const MomentTable& moments) {
  const std::size_t s = moments.num_colors();
  ZScores z{OptionalMatrix(s), std::vector<std::optional<double>>(s)};
  auto score = [](double observed, double mean, double var) -> std::optional<double> {
    if (!(var > 0.0)) return std::nullopt;
    return (observed - mean) / std::sqrt(var);
  };
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      z.edges(i, j) = score(static_cast<double>(counts.edges(i, j)),
                            moments.mean_edges(i, j), moments.var_edges(i, j));
    }
    z.isolated[i] = score(static_cast<double>(counts.isolated[i]), moments.mean_isolated[i],
                          moments.var_isolated[i]);
  }
  return z;
}

double u_value(double z, Bound bound) {
  const double z2 = z * z;
  if (bound == Bound::kCantelli) return 1.0 / (1.0 + z2);
  return z2 <= 1.0 ? 1.0 : 1.0 / z2;
}

UValues u_values(const ZScores& z, Bound bound) {
  const std::size_t s = z.isolated.size();
  UValues u{OptionalMatrix(s), std::vector<std::optional<double>>(s)};
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      if (z.edges(i, j)) u.edges(i, j) = u_value(*z.edges(i, j), bound);
    }
    if (z.isolated[i]) u.isolated[i] = u_value(*z.isolated[i], bound);
  }
  return u;
}

OptionalMatrix homophily_ratios(const EdgeBlockCounts& counts, const MomentTable& moments) {
  const std::size_t s = moments.num_colors();
  OptionalMatrix ratios(s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      const double mean = moments.mean_edges(i, j);
      if (mean > 0.0) ratios(i, j) = static_cast<double>(counts.edges(i, j)) / mean;
    }
  }
  return ratios;
}

PositiveSet positive_set(const OptionalMatrix& z, std::span<const CellIndex> candidates,
                         double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("significance level must lie in [0, 1]");
  }
  struct Eligible {
    CellIndex cell;
    double z;
  };
  std::vector<Eligible> eligible;
  for (const auto& cell : candidates) {
    const auto& value = z(cell.row, cell.col);
    if (value && *value > 0.0) eligible.push_back({cell, *value});
  }
  std::sort(eligible.begin(), eligible.end(), [](const Eligible& a, const Eligible& b) {
    return a.z != b.z ? a.z > b.z : a.cell < b.cell;
  });
  PositiveSet out;
  for (const auto& e : eligible) {
    const double cost = 1.0 / (e.z * e.z);
    if (out.level + cost > alpha) break;
    out.level += cost;
    out.cells.push_back(e.cell);
  }
  out.q = out.cells.size();
  return out;
}

std::vector<CellIndex> threshold_set(const OptionalMatrix& z, double lambda) {
  std::vector<CellIndex> cells;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i; j < z.size(); ++j) {
      if (z(i, j) && *z(i, j) > lambda) cells.push_back({i, j});
    }
  }
  return cells;
}

std::vector<CellIndex> diagonal_cells(std::size_t s) {
  std::vector<CellIndex> cells;
  for (std::size_t i = 0; i < s; ++i) cells.push_back({i, i});
  return cells;
}

std::vector<CellIndex> off_diagonal_cells(std::size_t s) {
  std::vector<CellIndex> cells;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) cells.push_back({i, j});
  }
  return cells;
}

double synthetic_index(const OptionalMatrix& z) {
  // Squares are summed in sorted order so the result does not depend on
  // how the colors are numbered.
  std::vector<double> squares;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z(i, i)) squares.push_back(*z(i, i) * *z(i, i));
  }
  std::sort(squares.begin(), squares.end());
  double norm2 = 0.0;
  for (double x : squares) norm2 += x;
  if (squares.empty() || !(norm2 > 0.0)) return 0.0;
  return std::max(0.0, 1.0 - static_cast<double>(squares.size()) / norm2);
}

AlphaSummary summarize_alpha(const OptionalMatrix& z, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("significance level must lie in (0, 1]");
  }
  const std::size_t s = z.size();
  AlphaSummary out;
  out.alpha = alpha;
  out.single_threshold = 1.0 / std::sqrt(alpha);
  out.joint_diagonal_threshold = static_cast<double>(s) / std::sqrt(alpha);
  for (std::size_t i = 0; i < s; ++i) {
    if (!z(i, i)) continue;
    if (*z(i, i) >= out.single_threshold) out.homophilic.push_back(i);
    if (*z(i, i) > out.joint_diagonal_threshold) out.jointly_homophilic.push_back(i);
  }
  for (const auto& cell : off_diagonal_cells(s)) {
    const auto& v = z(cell.row, cell.col);
    if (v && *v >= out.single_threshold) out.heterophilic.push_back(cell);
  }
  const auto diag = diagonal_cells(s);
  const auto off = off_diagonal_cells(s);
  out.diagonal = positive_set(z, diag, alpha);
  out.off_diagonal = positive_set(z, off, alpha);
  return out;
}

HomophilyReport analyze(const ColoredGraph& graph, const AnalysisOptions& options) {
  HomophilyReport report;
  report.num_nodes = graph.num_nodes();
  report.num_edges = graph.num_edges();
  report.p3 = count_p3(graph);
  report.density = graph.density();
  report.color_labels = graph.color_labels();
  const auto counts = graph.profile().counts();
  report.profile.assign(counts.begin(), counts.end());
  report.observed = block_edge_counts(graph);
  report.moments = compute_moments(graph, options.moments);
  report.z = zscore_arrays(report.observed, report.moments);
  report.bound = options.bound;
  report.u = u_values(report.z, options.bound);
  report.ratios = homophily_ratios(report.observed, report.moments);
  report.synthetic_index = synthetic_index(report.z.edges);
  for (double alpha : options.alphas) {
    report.alphas.push_back(summarize_alpha(report.z.edges, alpha));
  }
  return report;
}

}  // namespace homophily
