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

#include <Eigen/Core>

namespace lift3d {

// Pinhole intrinsics with zero skew:
//   K = [[fx, 0, cx], [0, fy, cy], [0, 0, 1]]
struct Intrinsics {
  double fx = 1.0, fy = 1.0;
  double cx = 0.0, cy = 0.0;

  Eigen::Matrix3d matrix() const;
  Eigen::Matrix3d inverse() const;

  friend bool operator==(const Intrinsics&, const Intrinsics&) = default;
};

// Camera-to-world transform: p_world = R * p_cam + T.
struct Extrinsics {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d T = Eigen::Vector3d::Zero();
};

// Continuous image coordinates: u along columns, v along rows. The center of
// pixel (col, row) is (col + 0.5, row + 0.5).
struct PixelCoord {
  double u = 0.0;
  double v = 0.0;

  static PixelCoord center_of(int col, int row) {
    return {col + 0.5, row + 0.5};
  }
  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

enum class Frame { kCamera, kWorld };

// Meters. Camera frame is x right, y down, z forward; world frame is z up.
struct Point3 {
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Frame frame = Frame::kCamera;
};

// Axis-aligned box given by its min and max corners.
struct AlignedBox {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();

  static AlignedBox empty();
  bool is_empty() const { return (min.array() > max.array()).any(); }
  void extend(const Eigen::Vector3d& p);
  bool contains(const Eigen::Vector3d& p, double tol = 0.0) const;
  Eigen::Vector3d extents() const { return max - min; }
  Eigen::Vector3d center() const { return 0.5 * (min + max); }
};

}  // namespace lift3d
