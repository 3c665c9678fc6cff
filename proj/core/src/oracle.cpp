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

#include "homophily/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "homophily/combinatorics.hpp"
#include "homophily/error.hpp"

namespace homophily {
namespace {

constexpr std::uint64_t kChunkSize = 4096;

__extension__ typedef unsigned __int128 Wide;

// Statistic slots: one per unordered color pair i <= j, then one per color
// for the isolated-node count.
class StatLayout {
 public:
  explicit StatLayout(std::size_t s) : s_(s), pair_slot_(s * s) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = i; j < s; ++j) {
        pair_slot_[i * s + j] = k;
        pair_slot_[j * s + i] = k;
        ++k;
      }
    }
    num_pairs_ = k;
  }

  std::size_t colors() const { return s_; }
  std::size_t size() const { return num_pairs_ + s_; }
  std::size_t edge_slot(ColorId a, ColorId b) const { return pair_slot_[a * s_ + b]; }
  std::size_t isolated_slot(std::size_t i) const { return num_pairs_ + i; }

 private:
  std::size_t s_;
  std::size_t num_pairs_ = 0;
  std::vector<std::size_t> pair_slot_;
};

// Counts M^{i,j} and L^i for one coloring into `out` (zeroed here).
void tally(const ColoredGraph& graph, const std::vector<ColorId>& coloring,
           const StatLayout& layout, std::vector<std::uint64_t>& out) {
  std::fill(out.begin(), out.end(), 0);
  const auto n = static_cast<NodeId>(graph.num_nodes());
  for (NodeId u = 0; u < n; ++u) {
    const ColorId cu = coloring[u];
    bool lonely = true;
    for (NodeId v : graph.neighbors(u)) {
      const ColorId cv = coloring[v];
      if (cv == cu) lonely = false;
      if (u < v) ++out[layout.edge_slot(cu, cv)];
    }
    if (lonely) ++out[layout.isolated_slot(cu)];
  }
}

NullSampleSummary make_summary(const StatLayout& layout) {
  const std::size_t s = layout.colors();
  NullSampleSummary summary;
  summary.edges = SquareMatrix<MomentEstimate>(s);
  summary.isolated.assign(s, MomentEstimate{});
  return summary;
}

template <typename Fn>
void scatter(NullSampleSummary& summary, const StatLayout& layout, Fn&& estimate_of) {
  const std::size_t s = layout.colors();
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i; j < s; ++j) {
      summary.edges.set_symmetric(
          i, j, estimate_of(layout.edge_slot(static_cast<ColorId>(i), static_cast<ColorId>(j))));
    }
    summary.isolated[i] = estimate_of(layout.isolated_slot(i));
  }
}

void check_profile(const ColoredGraph& graph, const ColorProfile& profile) {
  if (profile.total() != graph.num_nodes()) {
    throw DomainError("profile sums to " + std::to_string(profile.total()) +
                      " but the graph has " + std::to_string(graph.num_nodes()) + " nodes");
  }
}

// Running mean and central moment sums M2..M4 (Pebay's one-pass update and
// pairwise merge).
struct MomentAccumulator {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;

  void add(double x) {
    const double n1 = n;
    n += 1.0;
    const double delta = x - mean;
    const double delta_n = delta / n;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n1;
    mean += delta_n;
    m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2 - 4.0 * delta_n * m3;
    m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2;
    m2 += term1;
  }

  void merge(const MomentAccumulator& b) {
    if (b.n == 0.0) return;
    if (n == 0.0) {
      *this = b;
      return;
    }
    const double na = n;
    const double nb = b.n;
    const double nt = na + nb;
    const double delta = b.mean - mean;
    const double d2 = delta * delta;
    const double new_m4 = m4 + b.m4 + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (nt * nt * nt) +
                          6.0 * d2 * (na * na * b.m2 + nb * nb * m2) / (nt * nt) +
                          4.0 * delta * (na * b.m3 - nb * m3) / nt;
    const double new_m3 = m3 + b.m3 + d2 * delta * na * nb * (na - nb) / (nt * nt) +
                          3.0 * delta * (na * b.m2 - nb * m2) / nt;
    const double new_m2 = m2 + b.m2 + d2 * na * nb / nt;
    mean += delta * nb / nt;
    m2 = new_m2;
    m3 = new_m3;
    m4 = new_m4;
    n = nt;
  }

  MomentEstimate estimate() const {
    MomentEstimate e;
    e.mean = mean;
    e.variance = m2 / (n - 1.0);
    e.mean_se = std::sqrt(e.variance / n);
    const double c2 = m2 / n;
    const double c4 = m4 / n;
    const double var_of_var = (c4 - c2 * c2 * (n - 3.0) / (n - 1.0)) / n;
    e.variance_se = std::sqrt(std::max(0.0, var_of_var));
    return e;
  }
};

}  // namespace

NullSampleSummary enumerate_moments(const ColoredGraph& graph, const ColorProfile& profile,
                                    std::uint64_t budget) {
  check_profile(graph, profile);
  const std::uint64_t n = graph.num_nodes();
  if (log_multinomial(n, profile) > std::log(static_cast<double>(budget)) + 1e-9 ||
      multinomial(n, profile) > budget) {
    throw BudgetExceeded("enumerating all colorings exceeds the budget of " +
                         std::to_string(budget) + "; use sampled mode");
  }

  const StatLayout layout(profile.size());
  std::vector<Wide> sum(layout.size(), 0);
  std::vector<Wide> sum_sq(layout.size(), 0);
  std::vector<std::uint64_t> values(layout.size(), 0);
  std::vector<ColorId> coloring = profile.color_word();
  std::uint64_t count = 0;
  do {
    tally(graph, coloring, layout, values);
    for (std::size_t k = 0; k < values.size(); ++k) {
      sum[k] += values[k];
      sum_sq[k] += static_cast<Wide>(values[k]) * values[k];
    }
    ++count;
  } while (std::next_permutation(coloring.begin(), coloring.end()));

  NullSampleSummary summary = make_summary(layout);
  summary.exact = true;
  summary.count = count;
  const auto total = static_cast<Wide>(count);
  scatter(summary, layout, [&](std::size_t k) {
    MomentEstimate e;
    e.mean = static_cast<double>(static_cast<long double>(sum[k]) / count);
    // N * sum(x^2) - (sum x)^2 >= 0 exactly, then divided by N^2.
    const Wide spread = total * sum_sq[k] - sum[k] * sum[k];
    e.variance = static_cast<double>(static_cast<long double>(spread) /
                                     (static_cast<long double>(count) * count));
    return e;
  });
  return summary;
}

NullSampleSummary sample_moments(const ColoredGraph& graph, const ColorProfile& profile,
                                 std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  check_profile(graph, profile);
  if (samples < 2) throw DomainError("sample_moments needs at least 2 samples");

  const StatLayout layout(profile.size());
  const std::uint64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<std::vector<MomentAccumulator>> partial(
      chunks, std::vector<MomentAccumulator>(layout.size()));
  const std::vector<ColorId> word = profile.color_word();

  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    std::vector<std::uint64_t> values(layout.size());
    std::vector<ColorId> coloring;
    for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
      std::mt19937_64 rng(seq);
      coloring = word;
      const std::uint64_t begin = c * kChunkSize;
      const std::uint64_t end = std::min(samples, begin + kChunkSize);
      auto& acc = partial[c];
      for (std::uint64_t t = begin; t < end; ++t) {
        for (std::size_t i = coloring.size(); i > 1; --i) {
          std::uniform_int_distribution<std::size_t> pick(0, i - 1);
          std::swap(coloring[i - 1], coloring[pick(rng)]);
        }
        tally(graph, coloring, layout, values);
        for (std::size_t k = 0; k < values.size(); ++k) {
          acc[k].add(static_cast<double>(values[k]));
        }
      }
    }
  };
  const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  std::vector<MomentAccumulator> merged(layout.size());
  for (const auto& chunk : partial) {
    for (std::size_t k = 0; k < merged.size(); ++k) merged[k].merge(chunk[k]);
  }

  NullSampleSummary summary = make_summary(layout);
  summary.exact = false;
  summary.count = samples;
  scatter(summary, layout, [&](std::size_t k) { return merged[k].estimate(); });
  return summary;
}

}  // namespace homophily
