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

#include "lift3d/camera/camera.h"

#include <cmath>
#include <limits>

#include <Eigen/Geometry>

#include "lift3d/error.h"

namespace lift3d {
namespace {

constexpr double kParallelTolerance = 1e-6;

bool finite_vector(const Eigen::Vector3d& v) { return v.allFinite(); }

}  // namespace

Intrinsics intrinsics_from_prediction(const IntrinsicsPrediction& pred) {
  validate(pred);
  return {pred.fx, pred.fy, pred.cx, pred.cy};
}

Intrinsics rescale_intrinsics(const Intrinsics& k, int from_width, int from_height,
                              int to_width, int to_height) {
  LIFT3D_CHECK(from_width > 0 && from_height > 0 && to_width > 0 && to_height > 0,
               "image dimensions must be positive");
  const double sx = static_cast<double>(to_width) / from_width;
  const double sy = static_cast<double>(to_height) / from_height;
  return {k.fx * sx, k.fy * sy, k.cx * sx, k.cy * sy};
}

Eigen::Vector3d aggregate_up_vector(const GravityPrediction& g,
                                    const std::optional<PixelCoord>& principal_point) {
  if (g.field && !g.field->vectors.empty()) {
    const UpField& f = *g.field;
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    std::size_t n = 0;
    for (const Eigen::Vector3d& v : f.vectors) {
      if (!finite_vector(v)) continue;
      sum += v;
      ++n;
    }
    if (n > 0) {
      const double norm = sum.norm();
      if (norm > kParallelTolerance * static_cast<double>(n)) return sum / norm;
      // The field cancels out; fall back to the least distorted sample.
      const PixelCoord pp = principal_point.value_or(
          PixelCoord{0.5 * f.width, 0.5 * f.height});
      double best = std::numeric_limits<double>::infinity();
      Eigen::Vector3d pick = Eigen::Vector3d::Zero();
      for (int y = 0; y < f.height; ++y) {
        for (int x = 0; x < f.width; ++x) {
          const Eigen::Vector3d& v =
              f.vectors[static_cast<std::size_t>(y) * f.width + x];
          if (!finite_vector(v)) continue;
          const double du = x + 0.5 - pp.u;
          const double dv = y + 0.5 - pp.v;
          if (du * du + dv * dv < best) {
            best = du * du + dv * dv;
            pick = v;
          }
        }
      }
      return pick.normalized();
    }
  }
  if (g.up && finite_vector(*g.up) && g.up->norm() > 0.0) {
    return g.up->normalized();
  }
  throw Error(ErrorCode::kGravityUnavailable, "no finite up vector in prediction");
}

GravityAlignment rotation_from_up(const Eigen::Vector3d& up_camera) {
  if (!finite_vector(up_camera) || !(up_camera.norm() > 0.0)) {
    throw Error(ErrorCode::kGravityUnavailable, "up vector is not usable");
  }
  GravityAlignment out;
  const Eigen::Vector3d z_world = up_camera.normalized();
  out.up_camera = z_world;

  Eigen::Vector3d forward(0.0, 0.0, 1.0);
  Eigen::Vector3d y_world = forward - forward.dot(z_world) * z_world;
  if (y_world.norm() < kParallelTolerance) {
    out.status = GravityStatus::kDegenerate;
    forward = Eigen::Vector3d(0.0, -1.0, 0.0);
    y_world = forward - forward.dot(z_world) * z_world;
  }
  y_world.normalize();
  // One Gram-Schmidt pass removes the residual from the projection above.
  y_world -= y_world.dot(z_world) * z_world;
  y_world.normalize();
  const Eigen::Vector3d x_world = y_world.cross(z_world);

  // Rows are the world axes expressed in camera coordinates.
  out.extrinsics.R.row(0) = x_world.transpose();
  out.extrinsics.R.row(1) = y_world.transpose();
  out.extrinsics.R.row(2) = z_world.transpose();
  out.extrinsics.T.setZero();
  return out;
}

GravityAlignment rotation_from_gravity(const GravityPrediction& g,
                                       const std::optional<PixelCoord>& principal_point) {
  GravityAlignment out = rotation_from_up(aggregate_up_vector(g, principal_point));
  out.latitude_samples = g.latitude.size();
  return out;
}

Point3 unproject_pixel(const PixelCoord& p, double depth, const Intrinsics& k) {
  LIFT3D_CHECK(std::isfinite(depth) && depth > 0.0,
               "depth must be finite and positive");
  return {Eigen::Vector3d(depth * (p.u - k.cx) / k.fx,
                          depth * (p.v - k.cy) / k.fy, depth),
          Frame::kCamera};
}

std::pair<PixelCoord, double> project_point(const Point3& p, const Intrinsics& k) {
  LIFT3D_CHECK(p.frame == Frame::kCamera, "projection expects a camera-frame point");
  const double z = p.p.z();
  return {{k.fx * p.p.x() / z + k.cx, k.fy * p.p.y() / z + k.cy}, z};
}

Point3 camera_to_world(const Point3& p, const Extrinsics& e) {
  LIFT3D_CHECK(p.frame == Frame::kCamera, "camera_to_world expects a camera-frame point");
  return {e.R * p.p + e.T, Frame::kWorld};
}

bool is_rotation(const Eigen::Matrix3d& r, double tol) {
  const Eigen::Matrix3d err = r.transpose() * r - Eigen::Matrix3d::Identity();
  return err.cwiseAbs().maxCoeff() <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

LiftedScene lift_depth_map(const CalibratedDepthMap& depth, const Intrinsics& k,
                           const Extrinsics& e, const ColorRaster& rgb) {
  LIFT3D_CHECK(depth.width == rgb.width && depth.height == rgb.height &&
                   depth.mask.width == depth.width && depth.mask.height == depth.height,
               "depth, mask and color rasters must share dimensions");
  LiftedScene scene;
  scene.width = depth.width;
  scene.height = depth.height;
  scene.reserve(depth.mask.valid_count());
  for (int y = 0; y < depth.height; ++y) {
    for (int x = 0; x < depth.width; ++x) {
      if (!depth.mask.valid(x, y)) continue;
      const PixelCoord px = PixelCoord::center_of(x, y);
      const Point3 world = camera_to_world(unproject_pixel(px, depth.at(x, y), k), e);
      const std::size_t c = (static_cast<std::size_t>(y) * rgb.width + x) * 3;
      scene.push_back(world.p, {rgb.rgb[c], rgb.rgb[c + 1], rgb.rgb[c + 2]}, px);
    }
  }
  return scene;
}

}  // namespace lift3d
