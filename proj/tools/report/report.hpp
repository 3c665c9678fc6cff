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

// Report artifacts: report.json, matrices.csv, heatmap.svg and z0.svg.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "homophily/stats.hpp"

namespace homophily::report {

inline constexpr const char* kSchema = "homophily-report/1";

/// Serializes with a fixed key order and shortest round-trip doubles, so the
/// output is byte-identical for identical reports. Undefined entries and
/// infinite cancellation ratios are written as null.
std::string to_json(const HomophilyReport& report);

/// Inverse of to_json. Throws InputError on a malformed or foreign document.
HomophilyReport from_json(const std::string& text);

/// One row per statistic: the s(s+1)/2 edge cells i <= j, then the s
/// isolated-node counts.
void write_matrices_csv(std::ostream& out, const HomophilyReport& report);

struct HeatmapSpec {
  double lo = -10.0;
  double hi = 60.0;
  bool cell_labels = true;
  std::string positive_hue = "#1a9641";
  std::string negative_hue = "#d01c8b";
  std::string neutral_fill = "#d9d9d9";

  /// Throws DomainError unless lo <= 0 <= hi and lo < hi.
  void validate() const;
};

/// Heat-map value of a z-score: z is clamped to [lo, hi], then mapped by
/// t(z) = sign(z) log10(1 + |z|).
double heatmap_transform(double z, const HeatmapSpec& spec);

/// Heat-map of the symmetric Z matrix. Each cell carries class pos, neg,
/// zero or undef and a data-z attribute with the unclamped z-score.
void write_heatmap_svg(std::ostream& out, const HomophilyReport& report,
                       const HeatmapSpec& spec);

/// Side-by-side bars of the diagonal z-scores and the isolated-node
/// z-scores per color, on a linear scale.
void write_z0_svg(std::ostream& out, const HomophilyReport& report, const HeatmapSpec& spec);

/// Writes all four artifacts into `dir`, creating it if needed.
void write_all(const std::filesystem::path& dir, const HomophilyReport& report,
               const HeatmapSpec& spec);

}  // namespace homophily::report
