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

#include "report/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "homophily/error.hpp"
#include "json.hpp"

namespace homophily::report {
namespace {

using Json = nlohmann::ordered_json;

// ---- JSON -----------------------------------------------------------------

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json optional_json(const std::optional<double>& x) {
  return x ? number_or_null(*x) : Json(nullptr);
}

template <typename T, typename Fn>
Json matrix_json(const SquareMatrix<T>& m, Fn&& cell) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back(cell(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T, typename Fn>
Json vector_json(const std::vector<T>& v, Fn&& cell) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(cell(x));
  return out;
}

auto as_is = [](const auto& x) { return Json(x); };

Json cells_json(const std::vector<CellIndex>& cells) {
  Json out = Json::array();
  for (const auto& c : cells) out.push_back(Json::array({c.row, c.col}));
  return out;
}

Json positive_set_json(const PositiveSet& p) {
  Json out = Json::object();
  out["q"] = p.q;
  out["level"] = p.level;
  out["cells"] = cells_json(p.cells);
  return out;
}

const char* bound_name(Bound b) { return b == Bound::kCantelli ? "cantelli" : "chebyshev"; }

double read_double(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

std::optional<double> read_optional(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

template <typename T, typename Fn>
SquareMatrix<T> read_matrix(const Json& j, std::size_t s, Fn&& cell) {
  if (!j.is_array() || j.size() != s) throw InputError("matrix has the wrong size");
  SquareMatrix<T> m(s);
  for (std::size_t r = 0; r < s; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array() || row.size() != s) throw InputError("matrix row has the wrong size");
    for (std::size_t c = 0; c < s; ++c) m(r, c) = cell(row.at(c));
  }
  return m;
}

template <typename T, typename Fn>
std::vector<T> read_vector(const Json& j, std::size_t s, Fn&& cell) {
  if (!j.is_array() || j.size() != s) throw InputError("vector has the wrong size");
  std::vector<T> v;
  v.reserve(s);
  for (const auto& x : j) v.push_back(cell(x));
  return v;
}

std::vector<CellIndex> read_cells(const Json& j) {
  std::vector<CellIndex> cells;
  for (const auto& c : j) {
    cells.push_back({c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>()});
  }
  return cells;
}

PositiveSet read_positive_set(const Json& j) {
  PositiveSet p;
  p.q = j.at("q").get<std::size_t>();
  p.level = j.at("level").get<double>();
  p.cells = read_cells(j.at("cells"));
  return p;
}

// ---- text helpers ---------------------------------------------------------

std::string shortest(double x) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

std::string csv_optional(const std::optional<double>& x) { return x ? shortest(*x) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double x, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

struct Rgb {
  int r, g, b;
};

Rgb parse_hex(const std::string& hex) {
  if (hex.size() != 7 || hex[0] != '#') throw DomainError("expected a #rrggbb color: " + hex);
  const auto part = [&](std::size_t at) { return std::stoi(hex.substr(at, 2), nullptr, 16); };
  return {part(1), part(3), part(5)};
}

std::string mix_white(const Rgb& c, double t) {
  t = std::clamp(t, 0.0, 1.0);
  const auto ch = [t](int v) { return static_cast<int>(std::lround(255.0 + (v - 255.0) * t)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", ch(c.r), ch(c.g), ch(c.b));
  return buf;
}

const char* sign_class(const std::optional<double>& z) {
  if (!z) return "undef";
  return *z > 0.0 ? "pos" : *z < 0.0 ? "neg" : "zero";
}

// Fill for a defined z-score: white at 0, the full hue at the clamp bound.
std::string cell_fill(double z, const HeatmapSpec& spec) {
  const double t = heatmap_transform(z, spec);
  if (t > 0.0) return mix_white(parse_hex(spec.positive_hue), t / std::log10(1.0 + spec.hi));
  if (t < 0.0) return mix_white(parse_hex(spec.negative_hue), -t / std::log10(1.0 - spec.lo));
  return "#ffffff";
}

void svg_open(std::ostream& out, double width, double height) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0)
      << "\" height=\"" << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(width, 0) << ' '
      << fixed(height, 0) << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<style>.undef{fill:" << "url(#undef)" << ";stroke:#999}.cell{stroke:#fff}</style>\n";
}

}  // namespace

std::string to_json(const HomophilyReport& r) {
  const auto& m = r.moments;
  Json doc = Json::object();
  doc["schema"] = kSchema;
  doc["graph"] = {{"nodes", r.num_nodes}, {"edges", r.num_edges}, {"p3", r.p3},
                  {"density", r.density}};
  doc["colors"] = r.color_labels;
  doc["profile"] = r.profile;
  doc["bound"] = bound_name(r.bound);
  doc["observed"] = {{"edges", matrix_json(r.observed.edges, as_is)},
                     {"isolated", r.observed.isolated}};
  doc["moments"] = {
      {"mean_edges", matrix_json(m.mean_edges, as_is)},
      {"var_edges", matrix_json(m.var_edges, as_is)},
      {"mean_isolated", m.mean_isolated},
      {"var_isolated", m.var_isolated},
      {"edge_cancellation", matrix_json(m.edge_cancellation, number_or_null)},
      {"isolated_cancellation", vector_json(m.isolated_cancellation, number_or_null)},
      {"warnings", m.warnings}};
  doc["z"] = {{"edges", matrix_json(r.z.edges, optional_json)},
              {"isolated", vector_json(r.z.isolated, optional_json)}};
  doc["u"] = {{"edges", matrix_json(r.u.edges, optional_json)},
              {"isolated", vector_json(r.u.isolated, optional_json)}};
  doc["ratios"] = matrix_json(r.ratios, optional_json);
  doc["synthetic_index"] = r.synthetic_index;
  Json alphas = Json::array();
  for (const auto& a : r.alphas) {
    Json entry = Json::object();
    entry["alpha"] = a.alpha;
    entry["single_threshold"] = a.single_threshold;
    entry["joint_diagonal_threshold"] = a.joint_diagonal_threshold;
    entry["homophilic"] = a.homophilic;
    entry["jointly_homophilic"] = a.jointly_homophilic;
    entry["heterophilic"] = cells_json(a.heterophilic);
    entry["diagonal"] = positive_set_json(a.diagonal);
    entry["off_diagonal"] = positive_set_json(a.off_diagonal);
    alphas.push_back(std::move(entry));
  }
  doc["alphas"] = std::move(alphas);
  return doc.dump(2) + "\n";
}

HomophilyReport from_json(const std::string& text) {
  try {
    const Json doc = Json::parse(text);
    if (doc.at("schema").get<std::string>() != kSchema) {
      throw InputError("unsupported report schema '" + doc.at("schema").get<std::string>() + "'");
    }
    HomophilyReport r;
    const Json& g = doc.at("graph");
    r.num_nodes = g.at("nodes").get<std::uint64_t>();
    r.num_edges = g.at("edges").get<std::uint64_t>();
    r.p3 = g.at("p3").get<std::uint64_t>();
    r.density = g.at("density").get<double>();
    r.color_labels = doc.at("colors").get<std::vector<std::string>>();
    r.profile = doc.at("profile").get<std::vector<std::uint64_t>>();
    const std::size_t s = r.color_labels.size();
    if (r.profile.size() != s) throw InputError("profile and colors differ in length");

    const std::string bound = doc.at("bound").get<std::string>();
    if (bound == "chebyshev") {
      r.bound = Bound::kChebyshev;
    } else if (bound == "cantelli") {
      r.bound = Bound::kCantelli;
    } else {
      throw InputError("unknown bound '" + bound + "'");
    }

    const auto u64 = [](const Json& j) { return j.get<std::uint64_t>(); };
    const auto dbl = [](const Json& j) { return j.get<double>(); };
    const Json& obs = doc.at("observed");
    r.observed.edges = read_matrix<std::uint64_t>(obs.at("edges"), s, u64);
    r.observed.isolated = read_vector<std::uint64_t>(obs.at("isolated"), s, u64);

    const Json& mo = doc.at("moments");
    r.moments.mean_edges = read_matrix<double>(mo.at("mean_edges"), s, dbl);
    r.moments.var_edges = read_matrix<double>(mo.at("var_edges"), s, dbl);
    r.moments.mean_isolated = read_vector<double>(mo.at("mean_isolated"), s, dbl);
    r.moments.var_isolated = read_vector<double>(mo.at("var_isolated"), s, dbl);
    r.moments.edge_cancellation = read_matrix<double>(mo.at("edge_cancellation"), s, read_double);
    r.moments.isolated_cancellation =
        read_vector<double>(mo.at("isolated_cancellation"), s, read_double);
    r.moments.warnings = mo.at("warnings").get<std::vector<std::string>>();

    r.z.edges = read_matrix<std::optional<double>>(doc.at("z").at("edges"), s, read_optional);
    r.z.isolated =
        read_vector<std::optional<double>>(doc.at("z").at("isolated"), s, read_optional);
    r.u.edges = read_matrix<std::optional<double>>(doc.at("u").at("edges"), s, read_optional);
    r.u.isolated =
        read_vector<std::optional<double>>(doc.at("u").at("isolated"), s, read_optional);
    r.ratios = read_matrix<std::optional<double>>(doc.at("ratios"), s, read_optional);
    r.synthetic_index = doc.at("synthetic_index").get<double>();

    for (const auto& a : doc.at("alphas")) {
      AlphaSummary summary;
      summary.alpha = a.at("alpha").get<double>();
      summary.single_threshold = a.at("single_threshold").get<double>();
      summary.joint_diagonal_threshold = a.at("joint_diagonal_threshold").get<double>();
      summary.homophilic = a.at("homophilic").get<std::vector<std::size_t>>();
      summary.jointly_homophilic = a.at("jointly_homophilic").get<std::vector<std::size_t>>();
      summary.heterophilic = read_cells(a.at("heterophilic"));
      summary.diagonal = read_positive_set(a.at("diagonal"));
      summary.off_diagonal = read_positive_set(a.at("off_diagonal"));
      r.alphas.push_back(std::move(summary));
    }
    return r;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

void write_matrices_csv(std::ostream& out, const HomophilyReport& r) {
  const std::size_t s = r.color_labels.size();
  out << "statistic,color_i,color_j,observed,mean,variance,z,u,ratio\n";
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i; j < s; ++j) {
      out << "edges," << csv_field(r.color_labels[i]) << ',' << csv_field(r.color_labels[j])
          << ',' << r.observed.edges(i, j) << ',' << shortest(r.moments.mean_edges(i, j)) << ','
          << shortest(r.moments.var_edges(i, j)) << ',' << csv_optional(r.z.edges(i, j)) << ','
          << csv_optional(r.u.edges(i, j)) << ',' << csv_optional(r.ratios(i, j)) << '\n';
    }
  }
  for (std::size_t i = 0; i < s; ++i) {
    out << "isolated," << csv_field(r.color_labels[i]) << ",," << r.observed.isolated[i] << ','
        << shortest(r.moments.mean_isolated[i]) << ',' << shortest(r.moments.var_isolated[i])
        << ',' << csv_optional(r.z.isolated[i]) << ',' << csv_optional(r.u.isolated[i]) << ",\n";
  }
}

void HeatmapSpec::validate() const {
  if (!(lo < hi) || lo > 0.0 || hi < 0.0) {
    throw DomainError("heat-map clamp [" + shortest(lo) + ", " + shortest(hi) +
                      "] must satisfy lo <= 0 <= hi and lo < hi");
  }
}

double heatmap_transform(double z, const HeatmapSpec& spec) {
  const double c = std::clamp(z, spec.lo, spec.hi);
  const double t = std::log10(1.0 + std::abs(c));
  return c < 0.0 ? -t : t;
}

void write_heatmap_svg(std::ostream& out, const HomophilyReport& r, const HeatmapSpec& spec) {
  spec.validate();
  const std::size_t s = r.color_labels.size();
  const double cell = 48.0;
  const double margin = 90.0;
  const double grid = cell * static_cast<double>(s);
  const double legend_top = margin + grid + 30.0;
  const double width = std::max(margin + grid + 20.0, 380.0);
  const double height = legend_top + 80.0;

  svg_open(out, width, height);
  out << "<defs>\n"
      << "<pattern id=\"undef\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\">"
      << "<rect width=\"6\" height=\"6\" fill=\"" << spec.neutral_fill << "\"/>"
      << "<path d=\"M0,6 L6,0\" stroke=\"#999\" stroke-width=\"1\"/></pattern>\n"
      << "<linearGradient id=\"scale\" x1=\"0\" x2=\"1\" y1=\"0\" y2=\"0\">"
      << "<stop offset=\"0\" stop-color=\"" << spec.negative_hue << "\"/>";
  const double neg_span = std::log10(1.0 - spec.lo);
  const double pos_span = std::log10(1.0 + spec.hi);
  const double zero_at = neg_span / (neg_span + pos_span);
  out << "<stop offset=\"" << fixed(zero_at, 4) << "\" stop-color=\"#ffffff\"/>"
      << "<stop offset=\"1\" stop-color=\"" << spec.positive_hue << "\"/>"
      << "</linearGradient>\n</defs>\n";

  for (std::size_t k = 0; k < s; ++k) {
    const double at = margin + cell * (static_cast<double>(k) + 0.5);
    const std::string label = xml_escape(r.color_labels[k]);
    out << "<text class=\"col-label\" x=\"" << fixed(at) << "\" y=\"" << fixed(margin - 8.0)
        << "\" text-anchor=\"middle\">" << label << "</text>\n"
        << "<text class=\"row-label\" x=\"" << fixed(margin - 8.0) << "\" y=\""
        << fixed(at + 4.0) << "\" text-anchor=\"end\">" << label << "</text>\n";
  }

  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      const auto& z = r.z.edges(i, j);
      const double x = margin + cell * static_cast<double>(j);
      const double y = margin + cell * static_cast<double>(i);
      out << "<rect class=\"cell " << sign_class(z) << "\" data-row=\"" << i << "\" data-col=\""
          << j << "\" data-z=\"" << (z ? shortest(*z) : "undefined") << "\" x=\"" << fixed(x)
          << "\" y=\"" << fixed(y) << "\" width=\"" << fixed(cell) << "\" height=\""
          << fixed(cell) << "\"";
      if (z) out << " fill=\"" << cell_fill(*z, spec) << "\"";
      out << "/>\n";
      if (spec.cell_labels) {
        out << "<text class=\"cell-label\" x=\"" << fixed(x + cell / 2) << "\" y=\""
            << fixed(y + cell / 2 + 4.0) << "\" text-anchor=\"middle\" font-size=\"10\">"
            << (z ? fixed(*z, 1) : "n/a") << "</text>\n";
      }
    }
  }

  const double bar_w = width - 2 * 30.0;
  out << "<g class=\"legend\">\n"
      << "<rect x=\"30\" y=\"" << fixed(legend_top) << "\" width=\"" << fixed(bar_w)
      << "\" height=\"14\" fill=\"url(#scale)\" stroke=\"#999\"/>\n"
      << "<text class=\"legend-lo\" x=\"30\" y=\"" << fixed(legend_top + 30.0)
      << "\" text-anchor=\"start\">" << shortest(spec.lo) << "</text>\n"
      << "<text class=\"legend-zero\" x=\"" << fixed(30.0 + bar_w * zero_at) << "\" y=\""
      << fixed(legend_top + 30.0) << "\" text-anchor=\"middle\">0</text>\n"
      << "<text class=\"legend-hi\" x=\"" << fixed(30.0 + bar_w) << "\" y=\""
      << fixed(legend_top + 30.0) << "\" text-anchor=\"end\">" << shortest(spec.hi)
      << "</text>\n"
      << "<text class=\"legend-transform\" x=\"30\" y=\"" << fixed(legend_top + 50.0)
      << "\" font-size=\"10\">z clamped to [" << shortest(spec.lo) << ", " << shortest(spec.hi)
      << "], shaded by sign(z) log10(1 + |z|); hatched = undefined</text>\n"
      << "</g>\n</svg>\n";
}

void write_z0_svg(std::ostream& out, const HomophilyReport& r, const HeatmapSpec& spec) {
  const std::size_t s = r.color_labels.size();
  double top = 1.0;
  double bottom = -1.0;
  for (std::size_t i = 0; i < s; ++i) {
    for (const auto& z : {r.z.edges(i, i), r.z.isolated[i]}) {
      if (!z) continue;
      top = std::max(top, *z);
      bottom = std::min(bottom, *z);
    }
  }
  const double group = 60.0;
  const double bar = 22.0;
  const double left = 60.0;
  const double plot_top = 40.0;
  const double plot_h = 300.0;
  const double width = left + group * static_cast<double>(s) + 30.0;
  const double height = plot_top + plot_h + 60.0;
  const auto y_of = [&](double v) { return plot_top + plot_h * (top - v) / (top - bottom); };
  const double y0 = y_of(0.0);

  svg_open(out, std::max(width, 300.0), height);
  out << "<defs><pattern id=\"undef\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\">"
      << "<rect width=\"6\" height=\"6\" fill=\"" << spec.neutral_fill << "\"/>"
      << "<path d=\"M0,6 L6,0\" stroke=\"#999\" stroke-width=\"1\"/></pattern></defs>\n"
      << "<text x=\"" << fixed(left) << "\" y=\"20\">diagonal z (solid) and z0 (outlined) per "
      << "color</text>\n"
      << "<line class=\"axis\" x1=\"" << fixed(left) << "\" x2=\"" << fixed(width - 20.0)
      << "\" y1=\"" << fixed(y0) << "\" y2=\"" << fixed(y0) << "\" stroke=\"#333\"/>\n"
      << "<text x=\"" << fixed(left - 6.0) << "\" y=\"" << fixed(y_of(top) + 4.0)
      << "\" text-anchor=\"end\">" << fixed(top, 1) << "</text>\n"
      << "<text x=\"" << fixed(left - 6.0) << "\" y=\"" << fixed(y_of(bottom) + 4.0)
      << "\" text-anchor=\"end\">" << fixed(bottom, 1) << "</text>\n";

  const auto emit = [&](const char* series, std::size_t i, double x,
                        const std::optional<double>& z, bool outlined) {
    if (!z) {
      out << "<rect class=\"bar " << series << " undef\" data-color=\"" << i
          << "\" data-z=\"undefined\" x=\"" << fixed(x) << "\" y=\"" << fixed(y0 - 6.0)
          << "\" width=\"" << fixed(bar) << "\" height=\"12\"/>\n";
      return;
    }
    const double y = y_of(*z);
    const std::string hue = *z >= 0.0 ? spec.positive_hue : spec.negative_hue;
    out << "<rect class=\"bar " << series << ' ' << sign_class(z) << "\" data-color=\"" << i
        << "\" data-z=\"" << shortest(*z) << "\" x=\"" << fixed(x) << "\" y=\""
        << fixed(std::min(y, y0)) << "\" width=\"" << fixed(bar) << "\" height=\""
        << fixed(std::abs(y - y0)) << "\" fill=\"" << (outlined ? "#ffffff" : hue)
        << "\" stroke=\"" << hue << "\" stroke-width=\"2\"/>\n";
  };
  for (std::size_t i = 0; i < s; ++i) {
    const double x = left + group * static_cast<double>(i) + 6.0;
    emit("diag", i, x, r.z.edges(i, i), false);
    emit("z0", i, x + bar + 2.0, r.z.isolated[i], true);
    out << "<text class=\"color-label\" x=\"" << fixed(x + bar + 1.0) << "\" y=\""
        << fixed(plot_top + plot_h + 20.0) << "\" text-anchor=\"middle\">"
        << xml_escape(r.color_labels[i]) << "</text>\n";
  }
  out << "</svg>\n";
}

void write_all(const std::filesystem::path& dir, const HomophilyReport& report,
               const HeatmapSpec& spec) {
  spec.validate();
  std::filesystem::create_directories(dir);
  const auto open = [&](const char* name) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw InputError("cannot write file", (dir / name).string());
    return f;
  };
  {
    auto f = open("report.json");
    f << to_json(report);
  }
  {
    auto f = open("matrices.csv");
    write_matrices_csv(f, report);
  }
  {
    auto f = open("heatmap.svg");
    write_heatmap_svg(f, report, spec);
  }
  {
    auto f = open("z0.svg");
    write_z0_svg(f, report, spec);
  }
}

}  // namespace homophily::report
