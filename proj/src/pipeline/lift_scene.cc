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

#include "lift3d/pipeline/lift_scene.h"

#include <map>
#include <set>

#include "lift3d/annolift/annolift.h"
#include "lift3d/calibration/calibration.h"
#include "lift3d/camera/camera.h"
#include "lift3d/error.h"
#include "lift3d/file_util.h"

namespace lift3d {
namespace fs = std::filesystem;

DepthMap resample_nearest(const DepthMap& depth, int width, int height) {
  LIFT3D_CHECK(width > 0 && height > 0, "target dimensions must be positive");
  LIFT3D_CHECK(depth.width > 0 && depth.height > 0, "cannot resample an empty map");
  if (depth.width == width && depth.height == height) return depth;
  DepthMap out(width, height, depth.kind);
  for (int y = 0; y < height; ++y) {
    const auto sy = static_cast<int>((2 * static_cast<std::int64_t>(y) + 1) * depth.height /
                                     (2 * static_cast<std::int64_t>(height)));
    for (int x = 0; x < width; ++x) {
      const auto sx = static_cast<int>((2 * static_cast<std::int64_t>(x) + 1) * depth.width /
                                       (2 * static_cast<std::int64_t>(width)));
      out.at(x, y) = depth.at(sx, sy);
    }
  }
  return out;
}

std::pair<DepthMap, DepthMap> resample_to_common_grid(const DepthMap& relative,
                                                      const DepthMap& metric,
                                                      int width, int height) {
  return {resample_nearest(relative, width, height), resample_nearest(metric, width, height)};
}

const char* reject_reason_name(RejectReason reason) {
  switch (reason) {
    case RejectReason::kMissingInput: return "MissingInput";
    case RejectReason::kMalformedInput: return "MalformedInput";
    case RejectReason::kInconsistentDimensions: return "InconsistentDimensions";
    case RejectReason::kInvalidIntrinsics: return "InvalidIntrinsics";
    case RejectReason::kInsufficientValidPoints: return "InsufficientValidPoints";
    case RejectReason::kDegenerateRelativeDepth: return "DegenerateRelativeDepth";
    case RejectReason::kGravityUnavailable: return "GravityUnavailable";
    case RejectReason::kNoValidObjects: return "NoValidObjects";
    case RejectReason::kWriteFailed: return "WriteFailed";
    case RejectReason::kInternal: return "Internal";
  }
  return "Internal";
}

SceneOutcome lift_scene(const SceneInputs& in, const FilterPolicy& policy) {
  const int width = in.color.width;
  const int height = in.color.height;
  if (width <= 0 || height <= 0) {
    return Rejection{RejectReason::kInconsistentDimensions, "empty color raster"};
  }
  if (in.annotations.width != width || in.annotations.height != height) {
    return Rejection{RejectReason::kInconsistentDimensions,
                     "annotation image size differs from color raster"};
  }
  if (in.relative.pixel_count() == 0 || in.metric.pixel_count() == 0) {
    return Rejection{RejectReason::kInconsistentDimensions, "empty depth raster"};
  }

  SceneProvenance prov;
  const auto [relative, metric] =
      resample_to_common_grid(in.relative, in.metric, width, height);
  const ValidityMask mask = compute_validity_mask(relative, metric, policy);
  for (PixelStatus st : {PixelStatus::kOk, PixelStatus::kNonFinite, PixelStatus::kNonPositive,
                         PixelStatus::kEdgeMargin, PixelStatus::kOutlier}) {
    prov.pixel_status_counts.emplace_back(pixel_status_name(st), mask.count(st));
  }

  ScaleFactor scale;
  try {
    scale = compute_scale_factor(relative, metric, mask, policy.min_valid_points);
  } catch (const Error& e) {
    const RejectReason r = e.code() == ErrorCode::kInsufficientValidPoints
                               ? RejectReason::kInsufficientValidPoints
                               : RejectReason::kDegenerateRelativeDepth;
    return Rejection{r, e.what()};
  }
  prov.scale = scale.s;
  prov.valid_count = scale.valid_count;
  prov.mean_metric = scale.mean_metric;
  prov.mean_relative = scale.mean_relative;
  const CalibratedDepthMap calibrated = calibrate_depth(relative, scale, mask);

  Intrinsics k;
  try {
    k = intrinsics_from_prediction(in.camera.intrinsics);
  } catch (const Error& e) {
    return Rejection{RejectReason::kInvalidIntrinsics, e.what()};
  }
  const IntrinsicsPrediction& kp = in.camera.intrinsics;
  if (kp.width != width || kp.height != height) {
    k = rescale_intrinsics(k, kp.width, kp.height, width, height);
    prov.log.push_back("intrinsics rescaled from " + std::to_string(kp.width) + "x" +
                       std::to_string(kp.height));
  }

  GravityAlignment gravity;
  try {
    gravity = rotation_from_gravity(in.camera.gravity, PixelCoord{k.cx, k.cy});
  } catch (const Error& e) {
    return Rejection{RejectReason::kGravityUnavailable, e.what()};
  }
  prov.intrinsics = k;
  prov.extrinsics = gravity.extrinsics;
  prov.gravity_status = gravity.status == GravityStatus::kOk ? "ok" : "degenerate";
  prov.up_camera = gravity.up_camera;
  prov.latitude_samples = gravity.latitude_samples;
  if (gravity.status == GravityStatus::kDegenerate) {
    prov.log.push_back("up vector parallel to the optical axis; yaw taken from camera -y");
  }

  LiftedSceneResult result;
  result.scene = lift_depth_map(calibrated, k, gravity.extrinsics, in.color);
  result.scene.scene_id = in.scene_id;
  AnnotationLiftResult ann =
      build_scene_annotations(in.annotations, result.scene, calibrated, k, gravity.extrinsics);
  for (const std::string& w : in.annotations.warnings) prov.log.push_back(w);
  for (std::string& line : ann.log) prov.log.push_back(std::move(line));
  if (ann.rejected()) {
    return Rejection{RejectReason::kNoValidObjects, "no annotated instance has a valid point"};
  }
  result.annotations = std::move(ann.annotations);
  result.annotations.scene_id = in.scene_id;
  result.provenance = std::move(prov);
  return result;
}

std::vector<std::pair<std::string, CocoImage>> scene_ids_for(const CocoDocument& doc) {
  std::vector<std::string> stems;
  std::map<std::string, int> uses;
  for (const CocoImage& img : doc.images()) {
    std::string stem = fs::path(img.file_name).stem().string();
    for (char& ch : stem) {
      const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                      (ch >= '0' && ch <= '9') || ch == '.' || ch == '_' || ch == '-';
      if (!ok) ch = '_';
    }
    if (stem.empty() || stem == "." || stem == "..") stem = "image_" + std::to_string(img.id);
    ++uses[stem];
    stems.push_back(std::move(stem));
  }
  std::vector<std::pair<std::string, CocoImage>> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < stems.size(); ++i) {
    std::string id = stems[i];
    if (uses[id] > 1) id += "_" + std::to_string(doc.images()[i].id);
    if (!seen.insert(id).second) continue;  // repeated image entry
    out.emplace_back(std::move(id), doc.images()[i]);
  }
  return out;
}

ScenePaths scene_input_paths(const PipelineConfig& c, const std::string& id) {
  return {c.images_root / (id + ".rgb"), c.relative_depth_root / (id + ".dpth"),
          c.metric_depth_root / (id + ".dpth"), c.camera_root / (id + ".json")};
}

std::variant<SceneInputs, Rejection> load_scene_inputs(const PipelineConfig& config,
                                                       const CocoDocument& doc,
                                                       const std::string& scene_id,
                                                       const CocoImage& image) {
  const ScenePaths paths = scene_input_paths(config, scene_id);
  for (const fs::path& p : {paths.color, paths.relative, paths.metric, paths.camera}) {
    if (!fs::is_regular_file(p)) {
      return Rejection{RejectReason::kMissingInput, "missing " + p.string()};
    }
  }
  SceneInputs in;
  in.scene_id = scene_id;
  try {
    in.annotations = doc.annotations_for(image.id);
    in.color = load_color_raster(read_file(paths.color));
    in.relative = load_depth_raster(read_file(paths.relative), DepthKind::kRelative);
    in.metric = load_depth_raster(read_file(paths.metric), DepthKind::kMetric);
    in.camera = parse_camera_prediction(read_file(paths.camera), paths.camera.parent_path());
  } catch (const Error& e) {
    const RejectReason r =
        e.code() == ErrorCode::kIo ? RejectReason::kMissingInput : RejectReason::kMalformedInput;
    return Rejection{r, e.what()};
  }
  return in;
}

}  // namespace lift3d
