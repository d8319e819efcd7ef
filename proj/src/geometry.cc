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

#include "lift3d/geometry.h"

#include <limits>

namespace lift3d {

Eigen::Matrix3d Intrinsics::matrix() const {
  Eigen::Matrix3d k;
  k << fx, 0.0, cx,
       0.0, fy, cy,
       0.0, 0.0, 1.0;
  return k;
}

Eigen::Matrix3d Intrinsics::inverse() const {
  Eigen::Matrix3d k;
  k << 1.0 / fx, 0.0, -cx / fx,
       0.0, 1.0 / fy, -cy / fy,
       0.0, 0.0, 1.0;
  return k;
}

AlignedBox AlignedBox::empty() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {Eigen::Vector3d::Constant(inf), Eigen::Vector3d::Constant(-inf)};
}

void AlignedBox::extend(const Eigen::Vector3d& p) {
  min = min.cwiseMin(p);
  max = max.cwiseMax(p);
}

bool AlignedBox::contains(const Eigen::Vector3d& p, double tol) const {
  return (p.array() >= min.array() - tol).all() &&
         (p.array() <= max.array() + tol).all();
}

}  // namespace lift3d
