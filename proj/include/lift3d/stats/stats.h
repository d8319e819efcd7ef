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

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lift3d/scene.h"

namespace lift3d {

// z-extent of a point set in a gravity-aligned frame.
double object_height(std::span<const Eigen::Vector3d> points);
// z-extent between the 1st and 99th z percentiles.
double object_height_trimmed(std::span<const Eigen::Vector3d> points,
                             double lower_pct = 1.0, double upper_pct = 99.0);

struct InstanceSummary {
  std::int64_t category_id = 0;
  std::string category_name;
  std::size_t point_count = 0;
  double height = 0.0;
  double height_trimmed = 0.0;
};

struct SceneSummary {
  std::string scene_id;
  std::size_t total_points = 0;
  std::map<std::int64_t, std::size_t> labeled_points;  // by semantic label
  std::vector<InstanceSummary> instances;
};

SceneSummary summarize_scene(const LiftedScene& scene,
                             const SceneAnnotations3D& annotations);

struct CategoryStats {
  std::string name;
  std::size_t instance_count = 0;
  std::size_t point_count = 0;
  std::vector<double> heights;          // manifest order
  std::vector<double> heights_trimmed;  // same order
};

struct SceneStatistics {
  std::map<std::int64_t, CategoryStats> categories;
  std::size_t scenes = 0;
  std::size_t points = 0;
  std::size_t labeled_points = 0;
  std::size_t instances = 0;

  void add(const SceneSummary& scene);
  void merge(const SceneStatistics& other);  // appends `other` after this
};

SceneStatistics accumulate_statistics(std::span<const SceneSummary> scenes);

struct Histogram {
  double bin_width = 0.1;
  std::vector<std::size_t> counts;  // bin k covers [k*w, (k+1)*w)

  std::size_t total() const;
};

// Unknown categories yield an empty histogram; `min_bins` pads with zeros.
Histogram height_histogram(const SceneStatistics& stats, std::int64_t category,
                           double bin_width, bool trimmed = false,
                           std::size_t min_bins = 0);
Histogram make_histogram(std::span<const double> values, double bin_width,
                         std::size_t min_bins = 0);

std::map<std::int64_t, std::size_t> category_instance_counts(
    const SceneStatistics& stats);
// Share of labeled points per category, in percent.
std::map<std::int64_t, double> category_point_percentages(const SceneStatistics& stats);

std::string statistics_report_json(const SceneStatistics& stats, double bin_width);
std::string histogram_csv(const Histogram& h);
std::string histogram_svg(const Histogram& h, const std::string& title);

}  // namespace lift3d
