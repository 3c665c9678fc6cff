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

// Homophily statistics of a colored graph against the null model in which
// the coloring is drawn uniformly among all colorings with the same profile.
//
// For colors i, j the statistics are
//   M^{i,j}  number of edges whose endpoint colors are {i, j},
//   L^i      number of color-i nodes with no color-i neighbor,
// and this module evaluates their exact null means and variances, the
// observed z-scores, Chebyshev/Cantelli bounds on them, the joint
// significance machinery built on those bounds, and a [0, 1] global index.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homophily/graph.hpp"
#include "homophily/matrix.hpp"

namespace homophily {

using OptionalMatrix = SquareMatrix<std::optional<double>>;

/// Observed counts: edges(i, j) = edges(j, i) = m_{i,j}, and isolated[i] = l_i.
struct EdgeBlockCounts {
  SquareMatrix<std::uint64_t> edges;
  std::vector<std::uint64_t> isolated;
};

/// Null-model means and variances of M^{i,j} and L^i.
///
/// `*_cancellation` is the ratio between the largest term that entered a
/// variance and the variance itself (1 means no cancellation). `warnings`
/// lists variances that came out slightly negative and were clamped to 0.
struct MomentTable {
  SquareMatrix<double> mean_edges;
  SquareMatrix<double> var_edges;
  std::vector<double> mean_isolated;
  std::vector<double> var_isolated;
  SquareMatrix<double> edge_cancellation;
  std::vector<double> isolated_cancellation;
  std::vector<std::string> warnings;

  std::size_t num_colors() const noexcept { return mean_isolated.size(); }
};

/// Outcome of summing the terms of a variance formula.
struct VarianceValue {
  double value = 0.0;
  double largest_term = 0.0;
  bool clamped = false;

  /// largest_term / value, or 1 when both vanish.
  double cancellation() const;
};

/// Sums variance terms with compensated summation. A result within the
/// rounding floor (|v| <= 1e-12 * largest term) is exactly 0; a negative
/// result above -1e-6 * largest term is clamped to 0 and flagged; anything
/// more negative throws NumericError naming `what`.
VarianceValue combine_variance_terms(std::span<const long double> terms,
                                     const std::string& what);

EdgeBlockCounts block_edge_counts(const ColoredGraph& graph);

/// Mean of M^{i,j}: m c_i(c_i-1)/(n(n-1)) on the diagonal,
/// 2 m c_i c_j/(n(n-1)) off it. Throws DomainError for n < 2 or a profile
/// that does not sum to n.
SquareMatrix<double> expected_edges(std::uint64_t n, std::uint64_t m,
                                    const ColorProfile& profile);

struct EdgeVariances {
  SquareMatrix<double> values;
  SquareMatrix<double> cancellation;
  std::vector<std::string> warnings;
};

/// Exact variances of M^{i,j}. With P_k = c_i^{k}/n^{k} (falling powers)
///
///   var M^{i,i} = m P_2 (1 - m P_2) + 2 [(P_3 - P_4) p3 + P_4 C(m,2)]
///
/// and, for i != j, with Q_2 = c_i c_j / n^{2},
/// Q_3 = (c_i c_j^{2} + c_i^{2} c_j) / n^{3} and Q_4 = c_i^{2} c_j^{2} / n^{4},
///
///   var M^{i,j} = 2m Q_2 (1 - 2m Q_2) + 2 [(Q_3 - 4 Q_4) p3 + 4 Q_4 C(m,2)],
///
/// where p3 is the number of 2-edge paths (count_p3).
EdgeVariances edge_variances(std::uint64_t n, std::uint64_t m, std::uint64_t p3,
                             const ColorProfile& profile);

/// Values-only form of edge_variances.
SquareMatrix<double> variance_edges(std::uint64_t n, std::uint64_t m, std::uint64_t p3,
                                    const ColorProfile& profile);

/// E[L^i] = (c_i/n) sum_v (n-c_i)^{deg v} / (n-1)^{deg v}, summed per
/// distinct degree. Throws DomainError if c_i == 0.
double expected_isolated(const ColoredGraph& graph, const ColorProfile& profile,
                         std::size_t color);

enum class PairSumMethod {
  /// Direct sum over all ordered non-adjacent pairs, O(n (n + m)).
  kNaive,
  /// Degree-histogram double sum plus corrections, O(sum_v deg(v)^2).
  kFast,
};

/// S_i = sum over ordered pairs (u, v), u != v, uv not an edge, of
/// (n-c_i)^{b(u,v)} / (n-2)^{b(u,v)} with b(u,v) = |N(u) ∪ N(v)|.
/// Returns 0 when c_i < 2 (the sum is multiplied by c_i(c_i-1) downstream).
long double isolated_pair_sum(const ColoredGraph& graph, const ColorProfile& profile,
                              std::size_t color, PairSumMethod method);

struct IsolatedMoments {
  double mean = 0.0;
  VarianceValue variance;
};

/// var L^i = E[L^i](1 - E[L^i]) + c_i(c_i-1)/(n(n-1)) * S_i.
IsolatedMoments isolated_moments(const ColoredGraph& graph, const ColorProfile& profile,
                                 std::size_t color, PairSumMethod method);

double variance_isolated_naive(const ColoredGraph& graph, const ColorProfile& profile,
                               std::size_t color);
double variance_isolated_fast(const ColoredGraph& graph, const ColorProfile& profile,
                              std::size_t color);

struct MomentOptions {
  PairSumMethod method = PairSumMethod::kFast;
  /// Worker threads for the per-color isolated-node moments. Results do not
  /// depend on this value.
  unsigned threads = 1;
  /// Skip the L^i moments (their entries are left at 0).
  bool edges_only = false;
};

/// All moments for `profile` on the structure of `graph`. Throws
/// DomainError if the profile does not sum to n, has an empty class, or
/// n < 2.
MomentTable compute_moments(const ColoredGraph& graph, const ColorProfile& profile,
                            const MomentOptions& options = {});

/// compute_moments for the graph's own profile.
MomentTable compute_moments(const ColoredGraph& graph, const MomentOptions& options = {});

struct ZScores {
  OptionalMatrix edges;
  std::vector<std::optional<double>> isolated;
};

/// (observed - mean) / sd; entries with zero variance are absent.
ZScores zscore_arrays(const EdgeBlockCounts& counts, const MomentTable& moments);

enum class Bound {
  /// Two-sided Chebyshev: z^-2.
  kChebyshev,
  /// One-sided Cantelli: (1 + z^2)^-1.
  kCantelli,
};

/// Tail bound for a z-score, capped at 1 (larger bounds are vacuous).
double u_value(double z, Bound bound);

struct UValues {
  OptionalMatrix edges;
  std::vector<std::optional<double>> isolated;
};

UValues u_values(const ZScores& z, Bound bound);

/// omega_i = m_ii / mean_ii on the diagonal and eta_ij = m_ij / mean_ij off
/// it; absent where the mean is 0.
OptionalMatrix homophily_ratios(const EdgeBlockCounts& counts, const MomentTable& moments);

struct PositiveSet {
  std::vector<CellIndex> cells;
  std::size_t q = 0;
  /// Sum of z^-2 over `cells`: the joint significance level they reach.
  double level = 0.0;
};

/// Largest subset of `candidates` whose z^-2 values sum to at most alpha.
/// Only defined, strictly positive z-scores are eligible. Cells are taken
/// greedily by decreasing z, which is optimal for unit-profit budgets.
/// Throws DomainError unless 0 <= alpha <= 1.
PositiveSet positive_set(const OptionalMatrix& z, std::span<const CellIndex> candidates,
                         double alpha);

/// J(lambda) = {(i, j) : i <= j, z_ij > lambda}.
std::vector<CellIndex> threshold_set(const OptionalMatrix& z, double lambda);

std::vector<CellIndex> diagonal_cells(std::size_t s);
std::vector<CellIndex> off_diagonal_cells(std::size_t s);

/// max{0, 1 - d / ||diag Z||^2} where d counts the defined diagonal entries.
/// 0 when no diagonal entry is defined.
double synthetic_index(const OptionalMatrix& z);

/// Significance calls at one level alpha.
struct AlphaSummary {
  double alpha = 0.05;
  /// 1/sqrt(alpha): single-test threshold on z.
  double single_threshold = 0.0;
  /// s/sqrt(alpha): threshold for declaring the s diagonal tests jointly.
  double joint_diagonal_threshold = 0.0;
  std::vector<std::size_t> homophilic;          // z_ii >= single_threshold
  std::vector<std::size_t> jointly_homophilic;  // z_ii > joint_diagonal_threshold
  std::vector<CellIndex> heterophilic;          // i < j, z_ij >= single_threshold
  PositiveSet diagonal;
  PositiveSet off_diagonal;
};

AlphaSummary summarize_alpha(const OptionalMatrix& z, double alpha);

struct HomophilyReport {
  std::uint64_t num_nodes = 0;
  std::uint64_t num_edges = 0;
  std::uint64_t p3 = 0;
  double density = 0.0;
  std::vector<std::string> color_labels;
  std::vector<std::uint64_t> profile;
  EdgeBlockCounts observed;
  MomentTable moments;
  ZScores z;
  Bound bound = Bound::kChebyshev;
  UValues u;
  OptionalMatrix ratios;
  double synthetic_index = 0.0;
  std::vector<AlphaSummary> alphas;
};

struct AnalysisOptions {
  std::vector<double> alphas{0.05};
  Bound bound = Bound::kChebyshev;
  MomentOptions moments;
};

/// Full pipeline on the graph's own coloring.
HomophilyReport analyze(const ColoredGraph& graph, const AnalysisOptions& options = {});

}  // namespace homophily
