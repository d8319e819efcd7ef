// Copyright (c) 2026, The lift3d Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lift3d/stats/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "lift3d/error.h"

namespace lift3d {
namespace {

double percentile(std::vector<double> sorted_in_place, double pct) {
  std::sort(sorted_in_place.begin(), sorted_in_place.end());
  const double h = pct / 100.0 * static_cast<double>(sorted_in_place.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted_in_place.size() - 1);
  return sorted_in_place[lo] +
         (h - static_cast<double>(lo)) * (sorted_in_place[hi] - sorted_in_place[lo]);
}

std::string format_double(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

}  // namespace

double object_height(std::span<const Eigen::Vector3d> points) {
  LIFT3D_CHECK(!points.empty(), "object height needs at least one point");
  double lo = points.front().z();
  double hi = lo;
  for (const Eigen::Vector3d& p : points) {
    lo = std::min(lo, p.z());
    hi = std::max(hi, p.z());
  }
  return hi - lo;
}

double object_height_trimmed(std::span<const Eigen::Vector3d> points,
                             double lower_pct, double upper_pct) {
  LIFT3D_CHECK(!points.empty(), "object height needs at least one point");
  LIFT3D_CHECK(0.0 <= lower_pct && lower_pct <= upper_pct && upper_pct <= 100.0,
               "percentiles must satisfy 0 <= lower <= upper <= 100");
  std::vector<double> z;
  z.reserve(points.size());
  for (const Eigen::Vector3d& p : points) z.push_back(p.z());
  return percentile(z, upper_pct) - percentile(z, lower_pct);
}

SceneSummary summarize_scene(const LiftedScene& scene,
                             const SceneAnnotations3D& annotations) {
  SceneSummary s;
  s.scene_id = annotations.scene_id;
  s.total_points = scene.size();
  for (std::int32_t label : scene.semantic_labels) {
    if (label != kUnlabeled) ++s.labeled_points[label];
  }
  std::vector<Eigen::Vector3d> pts;
  for (const Instance3D& inst : annotations.instances) {
    if (inst.point_indices.empty()) continue;
    pts.clear();
    for (std::uint32_t i : inst.point_indices) {
      LIFT3D_CHECK(i < scene.size(), "instance references a missing point");
      pts.push_back(scene.points[i]);
    }
    s.instances.push_back({inst.category_id, inst.category_name, pts.size(),
                           object_height(pts), object_height_trimmed(pts)});
  }
  return s;
}

void SceneStatistics::add(const SceneSummary& scene) {
  ++scenes;
  points += scene.total_points;
  for (const auto& [cat, n] : scene.labeled_points) {
    categories[cat].point_count += n;
    labeled_points += n;
  }
  for (const InstanceSummary& inst : scene.instances) {
    CategoryStats& c = categories[inst.category_id];
    if (c.name.empty()) c.name = inst.category_name;
    ++c.instance_count;
    c.heights.push_back(inst.height);
    c.heights_trimmed.push_back(inst.height_trimmed);
    ++instances;
  }
}

void SceneStatistics::merge(const SceneStatistics& other) {
  scenes += other.scenes;
  points += other.points;
  labeled_points += other.labeled_points;
  instances += other.instances;
  for (const auto& [cat, o] : other.categories) {
    CategoryStats& c = categories[cat];
    if (c.name.empty()) c.name = o.name;
    c.instance_count += o.instance_count;
    c.point_count += o.point_count;
    c.heights.insert(c.heights.end(), o.heights.begin(), o.heights.end());
    c.heights_trimmed.insert(c.heights_trimmed.end(), o.heights_trimmed.begin(),
                             o.heights_trimmed.end());
  }
}

SceneStatistics accumulate_statistics(std::span<const SceneSummary> scenes) {
  SceneStatistics stats;
  for (const SceneSummary& s : scenes) stats.add(s);
  return stats;
}

std::size_t Histogram::total() const {
  std::size_t n = 0;
  for (std::size_t c : counts) n += c;
  return n;
}

Histogram make_histogram(std::span<const double> values, double bin_width,
                         std::size_t min_bins) {
  LIFT3D_CHECK(std::isfinite(bin_width) && bin_width > 0.0,
               "bin width must be positive");
  Histogram h;
  h.bin_width = bin_width;
  h.counts.assign(min_bins, 0);
  for (double v : values) {
    LIFT3D_CHECK(std::isfinite(v) && v >= 0.0, "histogram values must be >= 0");
    const auto bin = static_cast<std::size_t>(std::floor(v / bin_width));
    if (bin >= h.counts.size()) h.counts.resize(bin + 1, 0);
    ++h.counts[bin];
  }
  return h;
}

Histogram height_histogram(const SceneStatistics& stats, std::int64_t category,
                           double bin_width, bool trimmed, std::size_t min_bins) {
  auto it = stats.categories.find(category);
  if (it == stats.categories.end()) return make_histogram({}, bin_width, min_bins);
  return make_histogram(trimmed ? it->second.heights_trimmed : it->second.heights,
                        bin_width, min_bins);
}

std::map<std::int64_t, std::size_t> category_instance_counts(
    const SceneStatistics& stats) {
  std::map<std::int64_t, std::size_t> out;
  for (const auto& [cat, c] : stats.categories) {
    if (c.instance_count > 0) out[cat] = c.instance_count;
  }
  return out;
}

std::map<std::int64_t, double> category_point_percentages(const SceneStatistics& stats) {
  std::map<std::int64_t, double> out;
  if (stats.labeled_points == 0) return out;
  for (const auto& [cat, c] : stats.categories) {
    if (c.point_count == 0) continue;
    out[cat] = 100.0 * static_cast<double>(c.point_count) /
               static_cast<double>(stats.labeled_points);
  }
  return out;
}

std::string statistics_report_json(const SceneStatistics& stats, double bin_width) {
  using json = nlohmann::ordered_json;
  json report;
  report["schema"] = "lift3d.stats/1";
  report["totals"] = {{"scenes", stats.scenes},
                      {"points", stats.points},
                      {"labeled_points", stats.labeled_points},
                      {"instances", stats.instances}};
  const auto pct = category_point_percentages(stats);
  json cats = json::array();
  for (const auto& [cat, c] : stats.categories) {
    json entry;
    entry["category_id"] = cat;
    entry["name"] = c.name;
    entry["instance_count"] = c.instance_count;
    entry["point_count"] = c.point_count;
    auto p = pct.find(cat);
    entry["point_percentage"] = p == pct.end() ? 0.0 : p->second;
    for (const bool trimmed : {false, true}) {
      const auto& hs = trimmed ? c.heights_trimmed : c.heights;
      json h;
      if (!hs.empty()) {
        h["min"] = *std::min_element(hs.begin(), hs.end());
        h["max"] = *std::max_element(hs.begin(), hs.end());
        double sum = 0.0;
        for (double v : hs) sum += v;
        h["mean"] = sum / static_cast<double>(hs.size());
      }
      h["histogram"] = height_histogram(stats, cat, bin_width, trimmed).counts;
      entry[trimmed ? "height_trimmed_m" : "height_m"] = h;
    }
    cats.push_back(std::move(entry));
  }
  report["bin_width_m"] = bin_width;
  report["categories"] = std::move(cats);
  return report.dump(2) + "\n";
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream out;
  out << "bin_lo_m,bin_hi_m,count\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    out << format_double(k * h.bin_width) << ','
        << format_double((k + 1) * h.bin_width) << ',' << h.counts[k] << '\n';
  }
  return out.str();
}

std::string histogram_svg(const Histogram& h, const std::string& title) {
  constexpr double kWidth = 640, kHeight = 360;
  constexpr double kLeft = 50, kRight = 20, kTop = 40, kBottom = 40;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const std::size_t bins = std::max<std::size_t>(h.counts.size(), 1);
  const std::size_t peak =
      h.counts.empty() ? 0 : *std::max_element(h.counts.begin(), h.counts.end());
  const double bar_w = plot_w / static_cast<double>(bins);

  std::string escaped;
  for (char c : title) {
    switch (c) {
      case '<': escaped += "&lt;"; break;
      case '>': escaped += "&gt;"; break;
      case '&': escaped += "&amp;"; break;
      default: escaped += c;
    }
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\">" << escaped
      << "</text>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    if (h.counts[k] == 0) continue;
    const double bh = plot_h * static_cast<double>(h.counts[k]) / static_cast<double>(peak);
    svg << "<rect x=\"" << format_double(kLeft + k * bar_w, 2) << "\" y=\""
        << format_double(kTop + plot_h - bh, 2) << "\" width=\""
        << format_double(std::max(bar_w - 1.0, 0.5), 2) << "\" height=\""
        << format_double(bh, 2) << "\" fill=\"steelblue\"/>\n";
  }
  svg << "<text x=\"" << kLeft << "\" y=\"" << kHeight - 12 << "\">0 m</text>\n";
  svg << "<text x=\"" << kLeft + plot_w << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"end\">" << format_double(bins * h.bin_width, 2)
      << " m</text>\n";
  svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 4
      << "\" text-anchor=\"end\">" << peak << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lift3d
