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

// Acceptance gate: runs every acceptance criterion at its stated tolerance
// and prints one [PASS]/[FAIL] line per criterion. Exit status is nonzero if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "cli/cli.hpp"
#include "homophily/generator.hpp"
#include "homophily/ingest.hpp"
#include "homophily/oracle.hpp"
#include "homophily/stats.hpp"
#include "test_graphs.hpp"

namespace homophily {
namespace {

namespace t = homophily::testing;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel(double a, double b) {
  const double d = std::abs(a - b);
  return b == 0.0 ? d : d / std::abs(b);
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

unsigned hardware_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// 1. Closed forms equal exhaustive enumeration on every graph with n <= 6.
Outcome oracle_equivalence() {
  const std::vector<std::size_t> expected_counts{1, 2, 4, 11, 34, 156};
  double worst = 0.0;
  std::size_t graphs = 0;
  std::size_t cases = 0;
  bool counts_ok = true;
  for (std::uint32_t n = 2; n <= 6; ++n) {
    const auto classes = t::nonisomorphic_graphs(n);
    counts_ok = counts_ok && classes.size() == expected_counts[n - 1];
    graphs += classes.size();
    for (const auto& edges : classes) {
      for (std::size_t s = 1; s <= 3; ++s) {
        for (const auto& profile : t::compositions(n, s)) {
          const auto g = t::make_graph(n, edges, t::coloring_for(profile), s);
          worst = std::max(worst, t::worst_oracle_error(compute_moments(g),
                                                        enumerate_moments(g, g.profile())));
          ++cases;
        }
      }
    }
  }
  return {counts_ok && worst <= 1e-9,
          std::to_string(graphs) + " graphs (n=2..6), " + std::to_string(cases) +
              " graph/profile cases, max relative error " + fmt("%.3g", worst) +
              " (tolerance 1e-9)" + (counts_ok ? "" : ", WRONG isomorphism class counts")};
}

// 2. Hand-verified 3-node path.
Outcome path_fixture() {
  const auto g = t::path_graph({0, 0, 1});
  const auto m = compute_moments(g);
  const auto naive = variance_isolated_naive(g, g.profile(), 0);
  const auto exact = enumerate_moments(g, g.profile());
  const std::vector<std::pair<double, double>> checks{
      {m.mean_edges(0, 0), 2.0 / 3.0},     {m.var_edges(0, 0), 2.0 / 9.0},
      {m.mean_edges(0, 1), 4.0 / 3.0},     {m.var_edges(0, 1), 2.0 / 9.0},
      {m.mean_isolated[0], 2.0 / 3.0},     {m.var_isolated[0], 8.0 / 9.0},
      {naive, 8.0 / 9.0},                  {exact.edges(0, 0).variance, 2.0 / 9.0},
      {exact.edges(0, 1).variance, 2.0 / 9.0}, {exact.isolated[0].variance, 8.0 / 9.0},
  };
  double worst = 0.0;
  for (const auto& [got, want] : checks) worst = std::max(worst, std::abs(got - want));
  return {worst <= 1e-12, "mean/var of M11, M12, L1 = 2/3, 2/9, 4/3, 2/9, 2/3, 8/9; max abs error " +
                              fmt("%.3g", worst) + " (tolerance 1e-12)"};
}

std::vector<ColoredGraph> fast_naive_graphs() {
  std::mt19937_64 rng(20260101);
  std::vector<ColoredGraph> graphs;
  for (int k = 0; k < 200; ++k) {
    const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(10, 500)(rng);
    const double density = std::uniform_real_distribution<double>(0.005, 0.20)(rng);
    const std::size_t s = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    graphs.push_back(random_colored_graph_with_density(n, density, s, rng()));
  }
  return graphs;
}

// 3. Fast and naive var(L^i) agree.
Outcome fast_naive(const std::vector<ColoredGraph>& graphs) {
  double worst = 0.0;
  std::size_t checks = 0;
  for (const auto& g : graphs) {
    for (std::size_t i = 0; i < g.num_colors(); ++i) {
      worst = std::max(worst, rel(variance_isolated_fast(g, g.profile(), i),
                                  variance_isolated_naive(g, g.profile(), i)));
      ++checks;
    }
  }
  return {worst <= 1e-9, std::to_string(graphs.size()) + " graphs (n 10..500, density 0.5%..20%), " +
                             std::to_string(checks) + " colors, max relative difference " +
                             fmt("%.3g", worst) + " (tolerance 1e-9)"};
}

// 4. Monte Carlo moments land within 4 standard errors.
Outcome monte_carlo() {
  const auto g = random_colored_graph(200, 1000, 3, 4242);
  const auto closed = compute_moments(g);
  std::size_t total = 0;
  std::size_t inside = 0;
  const auto check = [&](double value, double se, double truth) {
    ++total;
    if (se == 0.0 ? value == truth : std::abs(value - truth) <= 4.0 * se) ++inside;
  };
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto est = sample_moments(g, g.profile(), 100'000, seed, hardware_threads());
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i; j < 3; ++j) {
        check(est.edges(i, j).mean, est.edges(i, j).mean_se, closed.mean_edges(i, j));
        check(est.edges(i, j).variance, est.edges(i, j).variance_se, closed.var_edges(i, j));
      }
      check(est.isolated[i].mean, est.isolated[i].mean_se, closed.mean_isolated[i]);
      check(est.isolated[i].variance, est.isolated[i].variance_se, closed.var_isolated[i]);
    }
  }
  const double share = static_cast<double>(inside) / static_cast<double>(total);
  return {share >= 0.99, "n=200, m=1000, s=3, N=1e5, 20 seeds: " + std::to_string(inside) + "/" +
                             std::to_string(total) + " means and variances within 4 SE (" +
                             fmt("%.1f", 100 * share) + "%, need >= 99%)"};
}

// 5. Expected and observed block counts both add up to m.
Outcome conservation(const std::vector<ColoredGraph>& extra) {
  std::size_t graphs = 0;
  double worst = 0.0;
  bool observed_ok = true;
  const auto check = [&](const ColoredGraph& g) {
    MomentOptions opts;
    opts.edges_only = true;
    const auto m = compute_moments(g, opts);
    const auto c = block_edge_counts(g);
    double mean_sum = 0.0;
    std::uint64_t observed = 0;
    for (std::size_t i = 0; i < g.num_colors(); ++i) {
      for (std::size_t j = i; j < g.num_colors(); ++j) {
        mean_sum += m.mean_edges(i, j);
        observed += c.edges(i, j);
      }
    }
    const double edges = static_cast<double>(g.num_edges());
    if (edges > 0) worst = std::max(worst, std::abs(mean_sum - edges) / edges);
    if (edges == 0 && mean_sum != 0.0) worst = std::max(worst, std::abs(mean_sum));
    observed_ok = observed_ok && observed == g.num_edges();
    ++graphs;
  };
  for (std::uint32_t n = 2; n <= 6; ++n) {
    for (const auto& edges : t::nonisomorphic_graphs(n)) {
      for (std::size_t s = 1; s <= 3; ++s) {
        for (const auto& profile : t::compositions(n, s)) {
          check(t::make_graph(n, edges, t::coloring_for(profile), s));
        }
      }
    }
  }
  for (const auto& g : extra) check(g);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    check(random_colored_graph(5000, 20'000 + 3000 * seed, 2 + seed % 7, seed));
  }
  return {worst <= 1e-9 && observed_ok,
          std::to_string(graphs) + " graphs: max |sum of means - m| / m = " + fmt("%.3g", worst) +
              " (tolerance 1e-9); observed sums " + (observed_ok ? "all exactly m" : "NOT m")};
}

// 6. Degenerate profiles and graphs.
Outcome degenerate() {
  std::vector<std::string> failures;
  const auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_colored_graph(30 + seed, 40 + 5 * seed, 1, seed);
    const auto m = compute_moments(g);
    expect(m.mean_edges(0, 0) == static_cast<double>(g.num_edges()), "c_i=n mean");
    expect(m.var_edges(0, 0) == 0.0, "c_i=n variance");
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    // Color 0 is a single node.
    auto base = random_colored_graph(25, 60, 1, 100 + seed);
    std::vector<NodePair> edges;
    base.for_each_edge([&](NodeId u, NodeId v) { edges.push_back({u, v}); });
    std::vector<ColorId> colors(25, 1);
    colors[seed] = 0;
    const auto g = ColoredGraph::from_edges(25, edges, colors, 2);
    const auto r = analyze(g);
    expect(!r.z.edges(0, 0).has_value(), "c_i=1 entry undefined");
    expect(r.observed.edges(0, 0) == 0, "c_i=1 observed m_ii = 0");
    expect(r.moments.mean_edges(0, 0) == 0.0 && r.moments.var_edges(0, 0) == 0.0,
           "c_i=1 moments zero");
  }
  for (const auto& profile : std::vector<std::vector<std::uint64_t>>{{5}, {2, 3}, {1, 2, 3}}) {
    const auto g = t::edgeless_graph(t::coloring_for(profile));
    const auto m = compute_moments(g);
    const auto exact = enumerate_moments(g, g.profile());
    for (std::size_t i = 0; i < profile.size(); ++i) {
      const double c = static_cast<double>(profile[i]);
      expect(m.mean_isolated[i] == c, "edgeless E[L^i] = c_i");
      // E(1 - E) + c_i(c_i - 1)/(n(n-1)) * n(n-1) = c(1 - c) + c(c - 1) = 0.
      expect(m.var_isolated[i] == 0.0 && exact.isolated[i].variance == 0.0,
             "edgeless var(L^i) per formula");
    }
  }
  for (std::uint32_t n = 2; n <= 12; ++n) {
    std::vector<ColorId> colors(n);
    for (std::uint32_t v = 0; v < n; ++v) colors[v] = v % 3 == 0 ? 0 : (v % 3 == 1 ? 1 : 2);
    const auto g = t::complete_graph(colors);
    for (std::size_t i = 0; i < g.num_colors(); ++i) {
      expect(isolated_pair_sum(g, g.profile(), i, PairSumMethod::kFast) == 0.0L &&
                 isolated_pair_sum(g, g.profile(), i, PairSumMethod::kNaive) == 0.0L,
             "complete graph pair-sum term = 0");
    }
  }
  std::string detail = "c_i=n, c_i=1, edgeless and complete-graph cases";
  if (!failures.empty()) {
    std::sort(failures.begin(), failures.end());
    failures.erase(std::unique(failures.begin(), failures.end()), failures.end());
    detail += "; failed: ";
    for (const auto& f : failures) detail += f + "; ";
  }
  return {failures.empty(), detail};
}

// 7. Edge z-score throughput and linear scaling.
Outcome throughput() {
  constexpr std::uint64_t n = 1'000'000;
  const auto half = random_colored_graph(n, 4'000'000, 5, 71);
  const double t_half = cli::median_seconds(3, [&] { (void)cli::edge_zscore_pipeline(half); });
  double t_full = 0.0;
  {
    const auto full = random_colored_graph(n, 8'000'000, 5, 72);
    t_full = cli::median_seconds(3, [&] { (void)cli::edge_zscore_pipeline(full); });
  }
  const double ratio = t_full / t_half;
  return {t_full <= 5.0 && ratio <= 2.5,
          "n=1e6, m=8e6, s=5: median " + fmt("%.3f", t_full) + " s (limit 5 s); m 4e6 -> 8e6 time ratio " +
              fmt("%.2f", ratio) + " (limit 2.5)"};
}

std::string percent_two_significant(double fraction) {
  const double pct = 100.0 * fraction;
  const int decimals = std::max(0, 1 - static_cast<int>(std::floor(std::log10(pct))));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f%%", decimals, pct);
  return buf;
}

// 8. Reported density is 2m / (n(n-1)).
Outcome density() {
  const std::string data = HOMOPHILY_TEST_DATA_DIR;
  IngestOptions opts;
  opts.cutoff = 700;
  const auto g = load_colored_graph(data + "/synthetic_nodes.tsv", data + "/synthetic_edges.tsv", opts);
  const auto r = analyze(g);
  const double expect = 2.0 * 450 / (150.0 * 149.0);
  const bool file_ok = r.num_nodes == 150 && r.num_edges == 450 && r.density == expect &&
                       percent_two_significant(r.density) == "4.0%";
  // Published size of the Bm network (n=2675, m=15450) must print as 0.43%.
  const auto bm = 2.0 * 15450 / (2675.0 * 2674.0);
  const bool table_ok = percent_two_significant(bm) == "0.43%";
  return {file_ok && table_ok, "bundled file after cutoff 700: n=" + std::to_string(r.num_nodes) +
                                   ", m=" + std::to_string(r.num_edges) + ", density " +
                                   percent_two_significant(r.density) +
                                   " (want n=150, m=450, 4.0%); Bm sizes give " +
                                   percent_two_significant(bm) + " (want 0.43%)"};
}

// Random graph whose edges prefer same-colored endpoints with probability h.
ColoredGraph planted_graph(std::uint64_t n, std::uint64_t m, std::size_t s, double h,
                           std::mt19937_64& rng) {
  std::vector<ColorId> colors(n);
  for (std::uint64_t v = 0; v < n; ++v) colors[v] = static_cast<ColorId>(v % s);
  std::uniform_int_distribution<std::uint64_t> node(0, n - 1);
  std::bernoulli_distribution same(h);
  std::set<std::pair<NodeId, NodeId>> edges;
  while (edges.size() < m) {
    const auto u = static_cast<NodeId>(node(rng));
    auto v = static_cast<NodeId>(node(rng));
    if (same(rng)) v = static_cast<NodeId>(v - v % s + colors[u]);
    if (v >= n || u == v) continue;
    edges.emplace(std::min(u, v), std::max(u, v));
  }
  std::vector<NodePair> list;
  for (const auto& [u, v] : edges) list.push_back({u, v});
  return ColoredGraph::from_edges(n, list, colors, s);
}

// 9. synthetic_index lies in [0, 1] and ignores the naming of colors.
Outcome synthetic_index_properties() {
  std::mt19937_64 rng(909);
  std::size_t positive = 0;
  bool bounded = true;
  bool invariant = true;
  for (int k = 0; k < 100; ++k) {
    const std::size_t s = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(s + 10, 300)(rng);
    const std::uint64_t m = std::uniform_int_distribution<std::uint64_t>(n / 2, 3 * n)(rng);
    const double h = std::uniform_real_distribution<double>(0.0, 0.9)(rng);
    const auto g = planted_graph(n, m, s, h, rng);
    std::vector<ColorId> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const double a = analyze(g).synthetic_index;
    const double b = analyze(t::relabel_colors(g, perm)).synthetic_index;
    bounded = bounded && a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0;
    invariant = invariant && a == b;
    positive += a > 0.0;
  }
  return {bounded && invariant,
          "100 instances (" + std::to_string(positive) + " with index > 0): in [0,1] " +
              (bounded ? "yes" : "NO") + ", identical under color permutation " +
              (invariant ? "yes" : "NO")};
}

}  // namespace
}  // namespace homophily

int main() {
  using namespace homophily;
  using Clock = std::chrono::steady_clock;
  int failures = 0;
  const auto report = [&](const char* id, const char* name, const std::function<Outcome()>& fn) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << id << ' ' << name << ": "
              << outcome.detail << " [" << fmt("%.1f", secs) << " s]" << std::endl;
  };

  std::vector<ColoredGraph> random_graphs;
  report("AC1", "oracle equivalence", oracle_equivalence);
  report("AC2", "path fixture", path_fixture);
  report("AC3", "fast/naive agreement", [&] {
    random_graphs = fast_naive_graphs();
    return fast_naive(random_graphs);
  });
  report("AC4", "Monte Carlo consistency", monte_carlo);
  report("AC5", "conservation", [&] { return conservation(random_graphs); });
  report("AC6", "degenerate suite", degenerate);
  report("AC7", "throughput", throughput);
  report("AC8", "density cross-check", density);
  report("AC9", "synthetic index", synthetic_index_properties);

  std::cout << (failures == 0 ? "all acceptance criteria passed"
                              : std::to_string(failures) + " acceptance criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
