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

#include <cmath>
#include <limits>

#include <Eigen/Geometry>

#include "lift3d/error.h"
#include "lift3d/oracle/oracle.h"

namespace lift3d::oracle {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
// Inclusive slack for points exactly on a primitive's boundary.
constexpr double kEdgeSlack = 1e-12;

bool within(double a, double half) { return std::abs(a) <= half * (1.0 + kEdgeSlack) + kEdgeSlack; }

}  // namespace

Primitive Primitive::plane(const Eigen::Vector3d& center, const Eigen::Vector3d& axis_u,
                           const Eigen::Vector3d& axis_v, double half_u, double half_v,
                           std::int64_t category_id) {
  Primitive p;
  p.kind = PrimitiveKind::kPlane;
  p.center = center;
  p.axis_u = axis_u.normalized();
  p.axis_v = axis_v.normalized();
  p.half_u = half_u;
  p.half_v = half_v;
  p.category_id = category_id;
  return p;
}

Primitive Primitive::box(const Eigen::Vector3d& min, const Eigen::Vector3d& max,
                         std::int64_t category_id) {
  Primitive p;
  p.kind = PrimitiveKind::kBox;
  p.box_min = min;
  p.box_max = max;
  p.center = 0.5 * (min + max);
  p.category_id = category_id;
  return p;
}

std::optional<double> intersect(const Primitive& prim, const Eigen::Vector3d& origin,
                                const Eigen::Vector3d& dir) {
  if (prim.kind == PrimitiveKind::kPlane) {
    const Eigen::Vector3d n = prim.axis_u.cross(prim.axis_v);
    const double denom = n.dot(dir);
    if (std::abs(denom) < 1e-15) return std::nullopt;
    const double t = n.dot(prim.center - origin) / denom;
    if (!(t > 0.0)) return std::nullopt;
    const Eigen::Vector3d r = origin + t * dir - prim.center;
    if (!within(r.dot(prim.axis_u), prim.half_u) || !within(r.dot(prim.axis_v), prim.half_v)) {
      return std::nullopt;
    }
    return t;
  }
  double t_near = -kInf;
  double t_far = kInf;
  for (int a = 0; a < 3; ++a) {
    const double lo = prim.box_min[a];
    const double hi = prim.box_max[a];
    if (dir[a] == 0.0) {
      if (origin[a] < lo || origin[a] > hi) return std::nullopt;
      continue;
    }
    double t0 = (lo - origin[a]) / dir[a];
    double t1 = (hi - origin[a]) / dir[a];
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
  }
  if (t_near > t_far + kEdgeSlack * (1.0 + std::abs(t_far))) return std::nullopt;
  if (!(t_near > 0.0)) return std::nullopt;  // camera inside or behind
  return t_near;
}

GroundTruth render_ground_truth(const SyntheticSceneSpec& spec) {
  LIFT3D_CHECK(spec.width > 0 && spec.height > 0, "image dimensions must be positive");
  LIFT3D_CHECK(spec.alpha > 0.0, "alpha must be positive");
  LIFT3D_CHECK(spec.k.fx > 0.0 && spec.k.fy > 0.0, "focal lengths must be positive");
  if (spec.primitives.empty()) throw Error(ErrorCode::kNothingVisible, "scene has no primitives");

  const int w = spec.width;
  const int h = spec.height;
  const std::size_t n = static_cast<std::size_t>(w) * h;
  GroundTruth gt;
  gt.spec = spec;
  gt.depth = DepthMap(w, h, DepthKind::kMetric, kNaN);
  gt.hit.assign(n, -1);
  gt.cloud.assign(n, Eigen::Vector3d::Constant(kNaN));
  gt.masks.assign(spec.primitives.size(), BitMask(w, h));
  gt.boxes.assign(spec.primitives.size(), AlignedBox::empty());

  const Eigen::Matrix3d& R = spec.camera.R;
  const Eigen::Vector3d& origin = spec.camera.T;
  bool any = false;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // Camera-frame ray with unit z, so the hit parameter is the depth.
      const Eigen::Vector3d ray((x + 0.5 - spec.k.cx) / spec.k.fx,
                                (y + 0.5 - spec.k.cy) / spec.k.fy, 1.0);
      const Eigen::Vector3d dir = R * ray;
      double best = kInf;
      int best_prim = -1;
      for (std::size_t p = 0; p < spec.primitives.size(); ++p) {
        const auto t = intersect(spec.primitives[p], origin, dir);
        if (t && *t < best) {
          best = *t;
          best_prim = static_cast<int>(p);
        }
      }
      if (best_prim < 0) continue;
      any = true;
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      gt.hit[i] = best_prim;
      gt.depth.values[i] = best;
      gt.cloud[i] = origin + best * dir;
      gt.masks[best_prim].set(x, y, true);
      gt.boxes[best_prim].extend(gt.cloud[i]);
    }
  }
  if (!any) throw Error(ErrorCode::kNothingVisible, "no primitive is visible");
  return gt;
}

Eigen::Matrix3d camera_rotation(double pitch, double roll) {
  Eigen::Matrix3d r0;
  r0 << 1, 0, 0,
        0, 0, 1,
        0, -1, 0;
  Eigen::Matrix3d rx;
  rx << 1, 0, 0,
        0, std::cos(pitch), -std::sin(pitch),
        0, std::sin(pitch), std::cos(pitch);
  Eigen::Matrix3d rz;
  rz << std::cos(roll), -std::sin(roll), 0,
        std::sin(roll), std::cos(roll), 0,
        0, 0, 1;
  return r0 * rx * rz;
}

double box_iou(const AlignedBox& a, const AlignedBox& b, double tol) {
  if (a.is_empty() || b.is_empty()) return 0.0;
  double inter = 1.0;
  double va = 1.0;
  double vb = 1.0;
  for (int ax = 0; ax < 3; ++ax) {
    const double la = a.max[ax] - a.min[ax];
    const double lb = b.max[ax] - b.min[ax];
    if (la <= tol && lb <= tol) {
      if (std::abs(a.min[ax] - b.min[ax]) > tol) return 0.0;
      continue;
    }
    const double overlap = std::min(a.max[ax], b.max[ax]) - std::max(a.min[ax], b.min[ax]);
    if (overlap <= 0.0) return 0.0;
    inter *= overlap;
    va *= la;
    vb *= lb;
  }
  const double uni = va + vb - inter;
  return uni > 0.0 ? inter / uni : 1.0;
}

}  // namespace lift3d::oracle
