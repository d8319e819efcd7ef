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

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lift3d/ingest/camera_prediction.h"
#include "lift3d/ingest/coco.h"
#include "lift3d/ingest/raster.h"
#include "lift3d/pipeline/config.h"
#include "lift3d/scene.h"

namespace lift3d {

// Nearest-neighbor resampling; source pixel for target x is
// floor((x + 0.5) * src_w / dst_w). Undefined samples stay undefined.
DepthMap resample_nearest(const DepthMap& depth, int width, int height);
std::pair<DepthMap, DepthMap> resample_to_common_grid(const DepthMap& relative,
                                                      const DepthMap& metric,
                                                      int width, int height);

// Machine-readable rejection codes recorded in the manifest.
enum class RejectReason {
  kMissingInput,
  kMalformedInput,
  kInconsistentDimensions,
  kInvalidIntrinsics,
  kInsufficientValidPoints,
  kDegenerateRelativeDepth,
  kGravityUnavailable,
  kNoValidObjects,
  kWriteFailed,
  kInternal,
};

const char* reject_reason_name(RejectReason reason);

struct Rejection {
  RejectReason reason = RejectReason::kInternal;
  std::string detail;
};

struct SceneInputs {
  std::string scene_id;
  AnnotationSet2D annotations;
  DepthMap relative;
  DepthMap metric;
  ColorRaster color;
  CameraPrediction camera;
};

struct LiftedSceneResult {
  LiftedScene scene;
  SceneAnnotations3D annotations;
  SceneProvenance provenance;
};

using SceneOutcome = std::variant<LiftedSceneResult, Rejection>;

// resample -> validity mask -> scale factor -> calibrated depth ->
// intrinsics and gravity rotation -> point cloud -> annotations.
SceneOutcome lift_scene(const SceneInputs& inputs, const FilterPolicy& policy);

// Scene ids for every image in the document, in document order: the file
// name stem with characters outside [A-Za-z0-9._-] replaced by '_', falling
// back to "image_<id>"; colliding stems get "_<id>" appended.
std::vector<std::pair<std::string, CocoImage>> scene_ids_for(const CocoDocument& doc);

struct ScenePaths {
  std::filesystem::path color, relative, metric, camera;
};
ScenePaths scene_input_paths(const PipelineConfig& config, const std::string& scene_id);

std::variant<SceneInputs, Rejection> load_scene_inputs(const PipelineConfig& config,
                                                       const CocoDocument& doc,
                                                       const std::string& scene_id,
                                                       const CocoImage& image);

}  // namespace lift3d
