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

#include <benchmark/benchmark.h>

#include "homophily/generator.hpp"
#include "homophily/graph.hpp"
#include "homophily/stats.hpp"

namespace homophily {
namespace {

// Edge z-scores on n = 100k nodes and m = range(0) edges.
void BM_EdgeZScores(benchmark::State& state) {
  const auto m = static_cast<std::uint64_t>(state.range(0));
  const auto g = random_colored_graph(100'000, m, 5, 1);
  MomentOptions opts;
  opts.edges_only = true;
  for (auto _ : state) {
    const auto counts = block_edge_counts(g);
    const auto moments = compute_moments(g, opts);
    benchmark::DoNotOptimize(zscore_arrays(counts, moments));
  }
  state.counters["edges/s"] =
      benchmark::Counter(static_cast<double>(m), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_EdgeZScores)->Arg(250'000)->Arg(500'000)->Arg(1'000'000)->Arg(2'000'000)->Unit(benchmark::kMillisecond);

void isolated_variance(benchmark::State& state, PairSumMethod method) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto g = random_colored_graph(n, 4 * n, 3, 2);
  for (auto _ : state) {
    for (std::size_t i = 0; i < g.num_colors(); ++i) {
      benchmark::DoNotOptimize(isolated_moments(g, g.profile(), i, method));
    }
  }
  state.counters["sum_deg2/s"] = benchmark::Counter(
      static_cast<double>(sum_squared_degrees(g)), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_IsolatedVarianceFast(benchmark::State& state) {
  isolated_variance(state, PairSumMethod::kFast);
}
BENCHMARK(BM_IsolatedVarianceFast)->Arg(1'000)->Arg(4'000)->Arg(16'000)->Arg(64'000)->Arg(256'000)->Unit(benchmark::kMillisecond);

void BM_IsolatedVarianceNaive(benchmark::State& state) {
  isolated_variance(state, PairSumMethod::kNaive);
}
BENCHMARK(BM_IsolatedVarianceNaive)->Arg(1'000)->Arg(4'000)->Unit(benchmark::kMillisecond);

void BM_BuildGraph(benchmark::State& state) {
  const auto m = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(random_colored_graph(100'000, m, 5, 3));
  state.counters["edges/s"] =
      benchmark::Counter(static_cast<double>(m), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_BuildGraph)->Arg(500'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace homophily

BENCHMARK_MAIN();
