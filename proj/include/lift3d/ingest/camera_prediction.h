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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "lift3d/ingest/raster.h"

namespace lift3d {

// Predicted pinhole parameters, in pixels of a width x height image.
struct IntrinsicsPrediction {
  double fx = 0, fy = 0;
  double cx = 0, cy = 0;
  int width = 0;
  int height = 0;
};

// Throws kContractViolation unless focal lengths are positive and the
// principal point lies inside the image.
void validate(const IntrinsicsPrediction& pred);

// Camera-frame up direction(s). Either an aggregate vector or a per-pixel
// field (or both). Every finite vector is unit length; unusable samples are
// stored as NaN vectors.
struct GravityPrediction {
  std::optional<Eigen::Vector3d> up;
  std::optional<UpField> field;
  // Per-pixel (row-major) or single-element latitude in radians. Carried for
  // provenance only.
  std::vector<double> latitude;
};

// Normalizes finite non-zero vectors and marks the rest NaN.
Eigen::Vector3d sanitize_up_vector(const Eigen::Vector3d& v);

struct CameraPrediction {
  IntrinsicsPrediction intrinsics;
  GravityPrediction gravity;
};

// JSON: {fx, fy, cx, cy, width, height, up: [x,y,z] | up_field: "path",
//        latitude: number | [numbers]}. up_field paths resolve against
// base_dir.
CameraPrediction parse_camera_prediction(std::string_view json_bytes,
                                         const std::filesystem::path& base_dir);

}  // namespace lift3d
