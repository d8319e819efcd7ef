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
#include <optional>
#include <string>
#include <vector>

#include "lift3d/calibration/calibration.h"
#include "lift3d/geometry.h"
#include "lift3d/ingest/coco.h"
#include "lift3d/ingest/mask.h"
#include "lift3d/scene.h"

namespace lift3d {

struct InstanceIds {
  std::int32_t instance_id = kUnlabeled;
  std::int32_t semantic_id = kUnlabeled;
};

// Maps a source pixel to the index of the point lifted from it, or -1.
struct PointLookup {
  int width = 0;
  int height = 0;
  std::vector<std::int64_t> point_of_pixel;

  std::int64_t at(int x, int y) const {
    return point_of_pixel[static_cast<std::size_t>(y) * width + x];
  }
};

PointLookup build_point_lookup(const LiftedScene& scene);

// Labels the points lifted from pixels inside `mask`; later calls overwrite
// earlier labels. Returns the labeled point indices in ascending order.
std::vector<std::uint32_t> lift_segmentation(const BitMask& mask, LiftedScene& scene,
                                             const InstanceIds& ids,
                                             const PointLookup* lookup = nullptr);

// Pixel index range [begin, end) whose centers fall inside a clamped bbox.
struct PixelRect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool empty() const { return x1 <= x0 || y1 <= y0; }
};
PixelRect pixel_rect(const BBox2D& bbox, int width, int height);

// Lifts the four bbox corners at the minimum and maximum valid calibrated
// depth inside the region and returns the world-axis-aligned bound of those
// eight points. With `region`, only pixels inside that mask contribute depth.
// Returns nullopt when the region holds no valid depth.
std::optional<Box3D> lift_bbox(const BBox2D& bbox, const CalibratedDepthMap& depth,
                               const Intrinsics& k, const Extrinsics& e,
                               const InstanceIds& ids,
                               const BitMask* region = nullptr);

struct AnnotationLiftResult {
  SceneAnnotations3D annotations;
  std::vector<std::string> log;  // dropped instances and decode problems
  bool rejected() const { return annotations.instances.empty(); }
};

// Mask instances label points and get a box from their tight 2D bounds;
// bbox-only instances collect the valid points in their rectangle without
// labeling them. Instances left with no points are dropped.
AnnotationLiftResult build_scene_annotations(const AnnotationSet2D& set2d,
                                             LiftedScene& scene,
                                             const CalibratedDepthMap& depth,
                                             const Intrinsics& k,
                                             const Extrinsics& e);

}  // namespace lift3d
