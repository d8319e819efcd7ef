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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "lift3d/geometry.h"

namespace lift3d {

inline constexpr std::int32_t kUnlabeled = -1;

using Rgb = std::array<std::uint8_t, 3>;

// World-frame point cloud lifted from one image. All per-point arrays share
// length; point order is row-major by source pixel.
struct LiftedScene {
  std::string scene_id;
  int width = 0;   // source raster
  int height = 0;
  std::vector<Eigen::Vector3d> points;
  std::vector<Rgb> colors;
  std::vector<PixelCoord> pixel_refs;
  std::vector<std::int32_t> instance_labels;
  std::vector<std::int32_t> semantic_labels;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool consistent() const;
  void reserve(std::size_t n);
  void push_back(const Eigen::Vector3d& p, const Rgb& c, const PixelCoord& ref);
};

// World-axis-aligned 3D box.
struct Box3D {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d extents = Eigen::Vector3d::Zero();  // full side lengths
  std::int32_t instance_id = kUnlabeled;
  std::int64_t category_id = 0;

  Eigen::Vector3d min() const { return center - 0.5 * extents; }
  Eigen::Vector3d max() const { return center + 0.5 * extents; }
  AlignedBox aligned() const { return {min(), max()}; }
};

struct Instance3D {
  std::int32_t instance_id = 0;
  std::int64_t source_annotation_id = 0;
  std::int64_t category_id = 0;
  std::string category_name;
  std::vector<std::uint32_t> point_indices;  // ascending
  std::optional<Box3D> box;
};

struct SceneAnnotations3D {
  std::string scene_id;
  std::int64_t image_id = 0;
  std::vector<Instance3D> instances;
};

// How a scene was lifted; serialized next to its annotations for review.
struct SceneProvenance {
  double scale = 0.0;
  std::size_t valid_count = 0;
  double mean_metric = 0.0;
  double mean_relative = 0.0;
  std::vector<std::pair<std::string, std::size_t>> pixel_status_counts;
  Intrinsics intrinsics;
  Extrinsics extrinsics;
  std::string gravity_status;
  Eigen::Vector3d up_camera = Eigen::Vector3d::Zero();
  std::size_t latitude_samples = 0;
  std::vector<std::string> log;
};

}  // namespace lift3d
