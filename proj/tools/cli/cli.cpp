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

#include "cli/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>

#include "CLI11.hpp"
#include "homophily/error.hpp"
#include "homophily/generator.hpp"

namespace homophily::cli {
namespace {

std::string shortest(double x) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

void add_ingest_flags(CLI::App* app, IngestOptions& opts) {
  app->add_option("--cutoff", opts.cutoff, "Keep edges with weight >= cutoff");
  app->add_option("--merge-suffix", opts.merge_suffix,
                  "Merge labels differing by a trailing regex match, e.g. _[0-9]+");
  app->add_option("--conflict-class", opts.conflict_class,
                  "Class for merged nodes whose parts disagree")
      ->capture_default_str();
  app->add_flag("--mutual-only", opts.mutual_only, "Keep only reciprocated directed edges");
  app->add_option("--bucket-config", opts.bucket_config,
                  "Node file holds raw values; bucket them with this config");
  app->add_option("--alias-config", opts.alias_config, "Rename classes (from,to lines)");
  app->add_flag("--keep-isolated", opts.keep_isolated, "Keep nodes without edges");
}

void add_inputs(CLI::App* app, std::filesystem::path& nodes, std::filesystem::path& edges) {
  app->add_option("nodes", nodes, "Node file (label class)")->required();
  app->add_option("edges", edges, "Edge file (label label [weight])")->required();
}

}  // namespace

HomophilyReport run_analyze(const AnalyzeArgs& args, std::ostream& log) {
  args.heatmap.validate();
  const ColoredGraph graph = load_colored_graph(args.node_file, args.edge_file, args.ingest);
  AnalysisOptions options;
  options.alphas = args.alphas;
  options.bound = args.cantelli ? Bound::kCantelli : Bound::kChebyshev;
  options.moments.threads = args.threads;
  HomophilyReport result = analyze(graph, options);
  report::write_all(args.out_dir, result, args.heatmap);

  log << "nodes " << result.num_nodes << ", edges " << result.num_edges << ", colors "
      << result.color_labels.size() << ", density " << shortest(result.density)
      << ", synthetic index " << shortest(result.synthetic_index) << '\n';
  for (const auto& a : result.alphas) {
    log << "alpha " << shortest(a.alpha) << ": " << a.homophilic.size()
        << " homophilic colors, q(diagonal) = " << a.diagonal.q
        << ", q(off-diagonal) = " << a.off_diagonal.q << '\n';
  }
  for (const auto& w : result.moments.warnings) log << "warning: " << w << '\n';
  log << "wrote report.json, matrices.csv, heatmap.svg, z0.svg to " << args.out_dir.string()
      << '\n';
  return result;
}

double relative_error(double a, double b) {
  const double diff = std::abs(a - b);
  return b == 0.0 ? diff : diff / std::abs(b);
}

double ValidationTable::max_error() const {
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max({worst, r.mean_error, r.variance_error});
  return worst;
}

ValidationTable validate(const ColoredGraph& graph, const ValidateArgs& args) {
  const ColorProfile& profile = graph.profile();
  MomentOptions mopts;
  mopts.threads = args.threads;
  MomentTable closed = compute_moments(graph, profile, mopts);
  if (args.perturb) args.perturb(closed);

  const NullSampleSummary oracle =
      args.mode == ValidateMode::kExact
          ? enumerate_moments(graph, profile, args.budget)
          : sample_moments(graph, profile, args.samples, args.seed, args.threads);

  ValidationTable table;
  table.exact = oracle.exact;
  table.colorings = oracle.count;
  const auto& labels = graph.color_labels();
  const auto add = [&](std::string name, double mean, double var, const MomentEstimate& e) {
    table.rows.push_back({std::move(name), mean, e.mean, relative_error(mean, e.mean), var,
                          e.variance, relative_error(var, e.variance), e.mean_se,
                          e.variance_se});
  };
  const std::size_t s = profile.size();
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i; j < s; ++j) {
      add("M[" + labels[i] + "," + labels[j] + "]", closed.mean_edges(i, j),
          closed.var_edges(i, j), oracle.edges(i, j));
    }
  }
  for (std::size_t i = 0; i < s; ++i) {
    add("L[" + labels[i] + "]", closed.mean_isolated[i], closed.var_isolated[i],
        oracle.isolated[i]);
  }
  return table;
}

int run_validate(const ValidateArgs& args, std::ostream& out) {
  const ColoredGraph graph = load_colored_graph(args.node_file, args.edge_file, args.ingest);
  const ValidationTable table = validate(graph, args);
  out << "# mode=" << (table.exact ? "exact" : "sample") << " colorings=" << table.colorings
      << '\n'
      << "statistic,closed_mean,oracle_mean,mean_rel_error,closed_variance,oracle_variance,"
         "variance_rel_error,mean_se,variance_se\n";
  for (const auto& r : table.rows) {
    out << r.statistic << ',' << shortest(r.closed_mean) << ',' << shortest(r.oracle_mean) << ','
        << shortest(r.mean_error) << ',' << shortest(r.closed_variance) << ','
        << shortest(r.oracle_variance) << ',' << shortest(r.variance_error) << ','
        << shortest(r.mean_se) << ',' << shortest(r.variance_se) << '\n';
  }
  const double worst = table.max_error();
  out << "# max_rel_error=" << shortest(worst) << '\n';
  if (table.exact && worst > kExactTolerance) {
    out << "# FAIL: exceeds " << shortest(kExactTolerance) << '\n';
    return kExitMismatch;
  }
  return kExitOk;
}

ZScores edge_zscore_pipeline(const ColoredGraph& graph) {
  MomentOptions opts;
  opts.edges_only = true;
  const EdgeBlockCounts counts = block_edge_counts(graph);
  const MomentTable moments = compute_moments(graph, opts);
  return zscore_arrays(counts, moments);
}

double median_seconds(unsigned repetitions, const std::function<void()>& fn) {
  std::vector<double> times;
  for (unsigned r = 0; r < std::max(1u, repetitions); ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    times.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t k = times.size();
  return k % 2 == 1 ? times[k / 2] : 0.5 * (times[k / 2 - 1] + times[k / 2]);
}

std::vector<BenchmarkRow> benchmark(const BenchmarkArgs& args) {
  std::vector<BenchmarkRow> rows;
  for (std::uint64_t m : args.edges) {
    const ColoredGraph graph = random_colored_graph(args.nodes, m, args.colors, args.seed);
    BenchmarkRow row;
    row.nodes = graph.num_nodes();
    row.edges = graph.num_edges();
    row.colors = graph.num_colors();
    row.sum_squared_degrees = sum_squared_degrees(graph);
    row.edge_seconds = median_seconds(args.repetitions, [&] {
      const ZScores z = edge_zscore_pipeline(graph);
      if (z.edges.size() != row.colors) throw NumericError("unexpected z-score shape");
    });
    if (args.isolated) {
      MomentOptions opts;
      opts.threads = args.threads;
      row.isolated_seconds = median_seconds(args.repetitions, [&] {
        for (std::size_t i = 0; i < graph.num_colors(); ++i) {
          (void)isolated_moments(graph, graph.profile(), i, PairSumMethod::kFast);
        }
      });
    }
    rows.push_back(row);
  }
  return rows;
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
  out << "nodes,edges,colors,sum_squared_degrees,edge_zscore_seconds,edges_per_second,"
         "isolated_variance_seconds,sum_squared_degrees_per_second\n";
  const auto rate = [](double amount, double seconds) {
    return seconds > 0.0 ? shortest(amount / seconds) : std::string();
  };
  for (const auto& r : rows) {
    out << r.nodes << ',' << r.edges << ',' << r.colors << ',' << r.sum_squared_degrees << ','
        << shortest(r.edge_seconds) << ',' << rate(static_cast<double>(r.edges), r.edge_seconds)
        << ',' << shortest(r.isolated_seconds) << ','
        << rate(static_cast<double>(r.sum_squared_degrees), r.isolated_seconds) << '\n';
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homophily z-scores of colored graphs against the uniform recoloring null model",
               "homophily"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  std::vector<double> clamp;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute z-scores and write the report");
  add_inputs(analyze_cmd, analyze_args.node_file, analyze_args.edge_file);
  add_ingest_flags(analyze_cmd, analyze_args.ingest);
  analyze_cmd->add_option("--clamp", clamp, "Heat-map clamp interval: lo hi (default -10 60)")
      ->expected(2);
  analyze_cmd->add_flag("--cantelli", analyze_args.cantelli,
                        "Report one-sided Cantelli bounds instead of Chebyshev");
  analyze_cmd->add_option("--alpha", analyze_args.alphas, "Significance levels, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  analyze_cmd->add_option("--threads", analyze_args.threads,
                       "Worker threads for the isolated-node moments")
      ->capture_default_str();
  analyze_cmd->add_option("--out", analyze_args.out_dir, "Output directory")
      ->capture_default_str();

  ValidateArgs validate_args;
  std::string mode = "exact";
  auto* validate_cmd =
      app.add_subcommand("validate", "Compare closed-form moments with the recoloring oracle");
  add_inputs(validate_cmd, validate_args.node_file, validate_args.edge_file);
  add_ingest_flags(validate_cmd, validate_args.ingest);
  validate_cmd->add_option("--mode", mode,
                           "exact enumerates every coloring; sample draws --samples")
      ->check(CLI::IsMember({"exact", "sample"}))
      ->capture_default_str();
  validate_cmd->add_option("--samples", validate_args.samples, "Colorings drawn in sample mode")
      ->capture_default_str();
  validate_cmd->add_option("--seed", validate_args.seed, "Sampler seed")->capture_default_str();
  validate_cmd->add_option("--threads", validate_args.threads, "Sampler threads")
      ->capture_default_str();

  BenchmarkArgs bench_args;
  bool skip_isolated = false;
  auto* bench_cmd = app.add_subcommand("benchmark", "Time the pipeline on random graphs");
  bench_cmd->add_option("--nodes", bench_args.nodes, "Nodes per random graph")
      ->capture_default_str();
  bench_cmd->add_option("--edges", bench_args.edges, "Edge counts, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--colors", bench_args.colors, "Number of classes")->capture_default_str();
  bench_cmd->add_option("--repetitions", bench_args.repetitions,
                       "Timed runs per size; the median is reported")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench_args.seed, "Graph generator seed")->capture_default_str();
  bench_cmd->add_option("--threads", bench_args.threads,
                       "Worker threads for the isolated-node moments")
      ->capture_default_str();
  bench_cmd->add_flag("--skip-isolated", skip_isolated, "Time only the edge z-scores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*analyze_cmd) {
      if (!clamp.empty()) {
        analyze_args.heatmap.lo = clamp[0];
        analyze_args.heatmap.hi = clamp[1];
      }
      run_analyze(analyze_args, out);
      return kExitOk;
    }
    if (*validate_cmd) {
      validate_args.mode = mode == "exact" ? ValidateMode::kExact : ValidateMode::kSample;
      return run_validate(validate_args, out);
    }
    bench_args.isolated = !skip_isolated;
    write_benchmark_csv(out, benchmark(bench_args));
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace homophily::cli
