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

// Subcommand implementations behind the homophily executable. They take
// parsed arguments and output streams so tests can drive them directly.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "homophily/ingest.hpp"
#include "homophily/oracle.hpp"
#include "homophily/stats.hpp"
#include "report/report.hpp"

namespace homophily::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitError = 2;

struct AnalyzeArgs {
  std::filesystem::path node_file;
  std::filesystem::path edge_file;
  IngestOptions ingest;
  report::HeatmapSpec heatmap;
  bool cantelli = false;
  std::vector<double> alphas{0.05};
  unsigned threads = 1;
  std::filesystem::path out_dir = ".";
};

/// Loads the graph, runs the analysis and writes report.json, matrices.csv,
/// heatmap.svg and z0.svg into out_dir. A one-paragraph summary goes to
/// `log`. Errors propagate as exceptions.
HomophilyReport run_analyze(const AnalyzeArgs& args, std::ostream& log);

enum class ValidateMode { kExact, kSample };

struct ValidateArgs {
  std::filesystem::path node_file;
  std::filesystem::path edge_file;
  IngestOptions ingest;
  ValidateMode mode = ValidateMode::kExact;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t budget = kDefaultEnumerationBudget;
  /// Test hook: edits the closed-form moments before the comparison.
  std::function<void(MomentTable&)> perturb;
};

struct ValidationRow {
  std::string statistic;  // "M[a,b]" or "L[a]"
  double closed_mean = 0.0;
  double oracle_mean = 0.0;
  double mean_error = 0.0;
  double closed_variance = 0.0;
  double oracle_variance = 0.0;
  double variance_error = 0.0;
  double mean_se = 0.0;
  double variance_se = 0.0;
};

struct ValidationTable {
  bool exact = false;
  std::uint64_t colorings = 0;
  std::vector<ValidationRow> rows;

  /// Largest mean_error / variance_error over all rows.
  double max_error() const;
};

/// Relative error |a - b| / |b|, or |a - b| when b == 0.
double relative_error(double a, double b);

inline constexpr double kExactTolerance = 1e-9;

ValidationTable validate(const ColoredGraph& graph, const ValidateArgs& args);

/// Writes the table as CSV. Returns kExitMismatch when an exact-mode error
/// exceeds kExactTolerance, else kExitOk.
int run_validate(const ValidateArgs& args, std::ostream& out);

struct BenchmarkArgs {
  std::uint64_t nodes = 100'000;
  std::vector<std::uint64_t> edges{400'000, 800'000};
  std::size_t colors = 5;
  unsigned repetitions = 5;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool isolated = true;
};

struct BenchmarkRow {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::size_t colors = 0;
  std::uint64_t sum_squared_degrees = 0;
  double edge_seconds = 0.0;      // median
  double isolated_seconds = 0.0;  // median, 0 when skipped
};

/// Block counts, p3, edge moments and edge z-scores: everything needed for
/// the edge z-score matrix once the graph is in memory.
ZScores edge_zscore_pipeline(const ColoredGraph& graph);

/// Median wall-clock seconds of `fn` over `repetitions` runs.
double median_seconds(unsigned repetitions, const std::function<void()>& fn);

std::vector<BenchmarkRow> benchmark(const BenchmarkArgs& args);

/// CSV with edges/sec and sum-of-squared-degrees/sec columns.
void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace homophily::cli
