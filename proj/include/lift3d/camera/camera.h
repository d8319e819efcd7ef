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

#include <optional>
#include <utility>

#include <Eigen/Core>

#include "lift3d/calibration/calibration.h"
#include "lift3d/geometry.h"
#include "lift3d/ingest/camera_prediction.h"
#include "lift3d/ingest/raster.h"
#include "lift3d/scene.h"

namespace lift3d {

Intrinsics intrinsics_from_prediction(const IntrinsicsPrediction& pred);

// Rescales intrinsics predicted for one resolution to another.
Intrinsics rescale_intrinsics(const Intrinsics& k, int from_width, int from_height,
                              int to_width, int to_height);

enum class GravityStatus { kOk, kDegenerate };

struct GravityAlignment {
  Extrinsics extrinsics;
  Eigen::Vector3d up_camera = Eigen::Vector3d::Zero();  // aggregated, unit
  GravityStatus status = GravityStatus::kOk;
  std::size_t latitude_samples = 0;  // ingested, not used by the rotation
};

// Single camera-frame up direction for a prediction. A per-pixel field is
// averaged over its finite samples and renormalized; if the average cancels,
// the sample nearest `principal_point` is used. Without a field, the aggregate
// vector is used. Throws kGravityUnavailable if nothing usable remains.
Eigen::Vector3d aggregate_up_vector(
    const GravityPrediction& g,
    const std::optional<PixelCoord>& principal_point = std::nullopt);

// Builds R with R * up = (0, 0, 1). The remaining yaw freedom is fixed by
// sending the camera's forward axis (+z) into the world half-plane y > 0.
// T is zero: the world origin is the camera center. When up is parallel to
// the forward axis, the camera's -y axis takes the role of forward and the
// result is tagged kDegenerate.
GravityAlignment rotation_from_gravity(
    const GravityPrediction& g,
    const std::optional<PixelCoord>& principal_point = std::nullopt);
GravityAlignment rotation_from_up(const Eigen::Vector3d& up_camera);

// P_cam = d * K^-1 [u, v, 1]^T. Requires d finite and positive.
Point3 unproject_pixel(const PixelCoord& p, double depth, const Intrinsics& k);

// Forward pinhole map; returns the pixel and the depth (z) of a camera point.
std::pair<PixelCoord, double> project_point(const Point3& p, const Intrinsics& k);

// P_world = R * P_cam + T.
Point3 camera_to_world(const Point3& p, const Extrinsics& e);

bool is_rotation(const Eigen::Matrix3d& r, double tol = 1e-9);

// One world point per valid pixel, row-major, with its color and pixel center.
LiftedScene lift_depth_map(const CalibratedDepthMap& depth, const Intrinsics& k,
                           const Extrinsics& e, const ColorRaster& rgb);

}  // namespace lift3d
