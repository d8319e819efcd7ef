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
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lift3d/geometry.h"
#include "lift3d/ingest/mask.h"
#include "lift3d/ingest/raster.h"
#include "lift3d/output/output.h"
#include "lift3d/pipeline/config.h"
#include "lift3d/pipeline/lift_scene.h"
#include "lift3d/scene.h"

namespace lift3d::oracle {

enum class PrimitiveKind { kPlane, kBox };

// Planes are finite rectangles: center + s*axis_u + t*axis_v with
// |s| <= half_u, |t| <= half_v (axes unit length and orthogonal). Boxes are
// world-axis-aligned [box_min, box_max]. Category 0 marks unannotated
// background.
struct Primitive {
  PrimitiveKind kind = PrimitiveKind::kPlane;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d axis_u = Eigen::Vector3d::UnitX();
  Eigen::Vector3d axis_v = Eigen::Vector3d::UnitY();
  double half_u = 1.0;
  double half_v = 1.0;
  Eigen::Vector3d box_min = Eigen::Vector3d::Zero();
  Eigen::Vector3d box_max = Eigen::Vector3d::Zero();
  std::int64_t category_id = 0;

  static Primitive plane(const Eigen::Vector3d& center, const Eigen::Vector3d& axis_u,
                         const Eigen::Vector3d& axis_v, double half_u, double half_v,
                         std::int64_t category_id);
  static Primitive box(const Eigen::Vector3d& min, const Eigen::Vector3d& max,
                       std::int64_t category_id);
  bool annotated() const { return category_id != 0; }
};

// Additive offset in meters applied to every defined metric depth sample.
struct NoiseModel {
  double metric_offset = 0.0;
};

struct SyntheticSceneSpec {
  std::string scene_id;
  int index = 0;  // position in the fixture set; feeds annotation ids
  int width = 0;
  int height = 0;
  Intrinsics k;
  Extrinsics camera;  // camera-to-world
  std::vector<Primitive> primitives;
  double alpha = 1.0;
  NoiseModel noise;
};

// Ray-primitive intersection; returns the ray parameter of the nearest hit
// with t > 0. Ray points are origin + t * dir.
std::optional<double> intersect(const Primitive& prim, const Eigen::Vector3d& origin,
                                const Eigen::Vector3d& dir);

struct GroundTruth {
  SyntheticSceneSpec spec;
  DepthMap depth;                       // camera-frame z; NaN on background
  std::vector<int> hit;                 // primitive index per pixel, -1 for none
  std::vector<BitMask> masks;           // per primitive
  std::vector<AlignedBox> boxes;        // per primitive, world frame, visible points
  std::vector<Eigen::Vector3d> cloud;   // per pixel, world frame, NaN for none

  int primitive_at(int x, int y) const { return hit[static_cast<std::size_t>(y) * spec.width + x]; }
  std::size_t visible_pixels(int prim) const { return masks[prim].area(); }
};

// Casts one ray through every pixel center. Throws kNothingVisible when no
// primitive is hit and kContractViolation for an invalid spec.
GroundTruth render_ground_truth(const SyntheticSceneSpec& spec);

// In-memory pipeline inputs for one scene: d_r = alpha * d_true,
// d_m = d_true (+ noise), a camera prediction with the exact K and up vector,
// and a single-image COCO document with RLE masks.
struct PipelineFixture {
  std::string scene_id;
  DepthMap relative;
  DepthMap metric;
  ColorRaster color;
  std::string camera_json;
  std::string up_field;  // encoded UPVF raster, empty unless requested
  std::string coco_json;
};

struct FixtureOptions {
  // Store the up vector as a per-pixel field instead of a single vector.
  bool up_field = false;
  RasterDtype depth_dtype = RasterDtype::kFloat64;
};

// COCO annotation id used for primitive `prim` of scene `index`.
std::int64_t annotation_id(int scene_index, int prim);
std::int64_t image_id(int scene_index);

PipelineFixture make_pipeline_inputs(const GroundTruth& gt, double alpha,
                                     const FixtureOptions& options = {});
// Parses a fixture into the structure lift_scene consumes.
SceneInputs to_scene_inputs(const PipelineFixture& fixture);

// Writes a directory consumable by `lift`:
//   images/ relative/ metric/ camera/ annotations.json config.json specs.json
// config.json points its output root at <dir>/out.
PipelineConfig write_fixture_set(const std::vector<GroundTruth>& scenes,
                                 const std::filesystem::path& dir,
                                 const FixtureOptions& options = {});

std::string specs_to_json(const std::vector<SyntheticSceneSpec>& specs);
std::vector<SyntheticSceneSpec> specs_from_json(std::string_view bytes);

// Scene generators. All draw from `rng` only, so a seed fixes the scene.
// Random boxes and planes in front of a tilted backdrop.
SyntheticSceneSpec random_scene(std::mt19937_64& rng, int index, int width, int height);
// Camera-facing rectangular cards (normal along the optical axis, edges along
// the camera axes) in front of a tilted backdrop.
SyntheticSceneSpec card_scene(std::mt19937_64& rng, int index, int width, int height);
// Upright camera and boxes of the given heights whose top and bottom front
// edges fall exactly on pixel-center rows.
SyntheticSceneSpec height_scene(std::mt19937_64& rng, int index, int width, int height,
                                const std::vector<double>& heights);
// R = R0 * Rx(pitch) * Rz(roll), where R0 maps the camera's forward axis to
// world +y and its -y axis to world +z.
Eigen::Matrix3d camera_rotation(double pitch, double roll);

// Intersection over union of two aligned boxes. An axis on which both boxes
// are flat and coincide (within tol) is ignored.
double box_iou(const AlignedBox& a, const AlignedBox& b, double tol = 1e-9);

struct InstanceScore {
  int primitive = -1;
  std::int64_t annotation_id = 0;
  std::int64_t category_id = 0;
  bool found = false;
  double label_iou = 0.0;
  double box_iou = 0.0;
  bool box_contains_points = false;
  double height = 0.0;          // z-extent of the lifted instance
  double planted_height = 0.0;  // boxes only; 0 for planes
  double height_error = 0.0;
};

struct SceneScore {
  std::string scene_id;
  std::size_t matched_points = 0;
  std::size_t unmatched_points = 0;  // points on pixels with no ground truth
  double cloud_rmse = 0.0;
  std::vector<InstanceScore> instances;
};

// Pixel references missing from the scene (as after a PLY read) are
// recovered by reprojecting each point with the ground-truth camera. The
// label reference set of an instance is its mask restricted to pixels that
// produced a point. `contain_tol` is the slack for box containment; outputs
// read back from PLY need about 1e-6 m for float32 storage.
SceneScore score_scene(const LiftedScene& scene, const SceneAnnotations3D& annotations,
                       const GroundTruth& gt, double contain_tol = 1e-9);

struct RunScore {
  std::vector<SceneScore> scenes;
  std::vector<std::string> unmatched;  // ground-truth scenes with no Ok output
  double max_rmse = 0.0;
  double min_label_iou = 1.0;
  double min_box_iou = 1.0;
  double max_height_error = 0.0;
};

// Scores every Ok manifest entry under `output_root` against the ground
// truth with the same scene id.
RunScore score_run(const std::filesystem::path& output_root, const DatasetManifest& manifest,
                   const std::vector<GroundTruth>& truth);
std::string score_report_json(const RunScore& score);

}  // namespace lift3d::oracle
