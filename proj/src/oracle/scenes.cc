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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <Eigen/Geometry>

#include "lift3d/error.h"
#include "lift3d/oracle/oracle.h"

namespace lift3d::oracle {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::string scene_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene_%05d", index);
  return buf;
}

Intrinsics random_intrinsics(std::mt19937_64& rng, int width, int height) {
  Intrinsics k;
  k.fx = width * uniform(rng, 0.9, 1.4);
  k.fy = k.fx * uniform(rng, 0.97, 1.03);
  k.cx = width * uniform(rng, 0.46, 0.54);
  k.cy = height * uniform(rng, 0.46, 0.54);
  return k;
}

Eigen::Vector3d to_world(const SyntheticSceneSpec& s, const Eigen::Vector3d& cam) {
  return s.camera.T + s.camera.R * cam;
}

Eigen::Vector3d camera_point(const Intrinsics& k, double u, double v, double z) {
  return {(u - k.cx) / k.fx * z, (v - k.cy) / k.fy * z, z};
}

// A large tilted wall behind everything, so background depth varies across
// the image and the outlier fences stay wide.
Primitive backdrop(std::mt19937_64& rng, const SyntheticSceneSpec& s, double depth) {
  const double yaw = uniform(rng, 30.0, 40.0) * kDeg * (uniform(rng, 0.0, 1.0) < 0.5 ? -1 : 1);
  const double tilt = uniform(rng, -8.0, 8.0) * kDeg;
  const Eigen::Matrix3d rot = (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitY()) *
                               Eigen::AngleAxisd(tilt, Eigen::Vector3d::UnitX()))
                                  .toRotationMatrix();
  return Primitive::plane(to_world(s, {0.0, 0.0, depth}), s.camera.R * rot.col(0),
                          s.camera.R * rot.col(1), 500.0, 500.0, 0);
}

}  // namespace

SyntheticSceneSpec random_scene(std::mt19937_64& rng, int index, int width, int height) {
  SyntheticSceneSpec s;
  s.scene_id = scene_name(index);
  s.index = index;
  s.width = width;
  s.height = height;
  s.k = random_intrinsics(rng, width, height);
  s.camera.R = camera_rotation(uniform(rng, -25.0, 25.0) * kDeg, uniform(rng, -15.0, 15.0) * kDeg);
  s.camera.T = {uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0), uniform(rng, 1.0, 2.0)};

  const int objects = uniform_int(rng, 1, 3);
  for (int i = 0; i < objects; ++i) {
    const double z = uniform(rng, 3.0, 5.5);
    const double u = width * uniform(rng, 0.25, 0.75);
    const double v = height * uniform(rng, 0.25, 0.75);
    const Eigen::Vector3d c = to_world(s, camera_point(s.k, u, v, z));
    const std::int64_t cat = uniform_int(rng, 1, 4);
    if (uniform(rng, 0.0, 1.0) < 0.6) {
      const Eigen::Vector3d half(uniform(rng, 0.2, 0.6), uniform(rng, 0.2, 0.6),
                                 uniform(rng, 0.2, 0.6));
      s.primitives.push_back(Primitive::box(c - half, c + half, cat));
    } else {
      const Eigen::Vector3d a = Eigen::Vector3d(uniform(rng, -1, 1), uniform(rng, -1, 1),
                                                uniform(rng, -1, 1)).normalized();
      Eigen::Vector3d b = Eigen::Vector3d(uniform(rng, -1, 1), uniform(rng, -1, 1),
                                          uniform(rng, -1, 1));
      b = (b - b.dot(a) * a).normalized();
      s.primitives.push_back(
          Primitive::plane(c, a, b, uniform(rng, 0.3, 0.8), uniform(rng, 0.3, 0.8), cat));
    }
  }
  s.primitives.push_back(backdrop(rng, s, uniform(rng, 6.5, 8.0)));
  return s;
}

SyntheticSceneSpec card_scene(std::mt19937_64& rng, int index, int width, int height) {
  SyntheticSceneSpec s;
  s.scene_id = scene_name(index);
  s.index = index;
  s.width = width;
  s.height = height;
  s.k = random_intrinsics(rng, width, height);
  s.camera.R = camera_rotation(uniform(rng, -20.0, 20.0) * kDeg, uniform(rng, -3.0, 3.0) * kDeg);
  s.camera.T = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, 1.0, 2.0)};

  // Two cards, one per image half, each spanning most of its half.
  const Eigen::Vector3d ex = s.camera.R.col(0);
  const Eigen::Vector3d ey = s.camera.R.col(1);
  for (int i = 0; i < 2; ++i) {
    const double span_u = 0.5 * width * uniform(rng, 0.8, 0.9);
    const double span_v = height * uniform(rng, 0.7, 0.85);
    const double u = width * (0.25 + 0.5 * i) + uniform(rng, -0.02, 0.02) * width;
    const double v = height * 0.5 + uniform(rng, -0.03, 0.03) * height;
    const double z = uniform(rng, 2.0, 5.0);
    const Eigen::Vector3d c = to_world(s, camera_point(s.k, u, v, z));
    s.primitives.push_back(Primitive::plane(c, ex, ey, 0.5 * span_u * z / s.k.fx,
                                            0.5 * span_v * z / s.k.fy, uniform_int(rng, 1, 4)));
  }
  s.primitives.push_back(backdrop(rng, s, uniform(rng, 7.0, 9.0)));
  return s;
}

SyntheticSceneSpec height_scene(std::mt19937_64& rng, int index, int width, int height,
                                const std::vector<double>& heights) {
  LIFT3D_CHECK(!heights.empty(), "need at least one planted height");
  SyntheticSceneSpec s;
  s.scene_id = scene_name(index);
  s.index = index;
  s.width = width;
  s.height = height;
  const double f = width * uniform(rng, 0.9, 1.2);
  s.k = Intrinsics{f, f, 0.5 * width, 0.5 * height};
  s.camera.R = camera_rotation(0.0, 0.0);
  s.camera.T = Eigen::Vector3d::Zero();

  const int margin = 6;
  const int max_rows = height - 2 * margin - 2;
  const double band = static_cast<double>(width) / static_cast<double>(heights.size());
  double farthest = 0.0;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    const double h_m = heights[i];
    // Front face at depth D spans exactly n pixel rows when D = f * H / n.
    int n = static_cast<int>(std::lround(f * h_m / uniform(rng, 2.5, 5.0)));
    n = std::clamp(n, 8, max_rows);
    const double d = f * h_m / n;
    const int r_top = uniform_int(rng, margin, height - margin - 1 - n);
    const double z_top = -d * (r_top + 0.5 - s.k.cy) / f;
    const double z_bot = z_top - h_m;

    const double u_mid = band * (i + 0.5);
    const double half_w = 0.25 * band * d / f;
    const double x_mid = (u_mid - s.k.cx) * d / f;
    const double depth_extent = uniform(rng, 0.2, 0.5);
    s.primitives.push_back(Primitive::box({x_mid - half_w, d, z_bot},
                                          {x_mid + half_w, d + depth_extent, z_top}, 1));
    farthest = std::max(farthest, d + depth_extent);
  }
  s.primitives.push_back(backdrop(rng, s, farthest + uniform(rng, 2.0, 4.0)));
  return s;
}

}  // namespace lift3d::oracle
