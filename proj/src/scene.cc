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

#include "lift3d/scene.h"

namespace lift3d {

bool LiftedScene::consistent() const {
  const std::size_t n = points.size();
  return colors.size() == n && pixel_refs.size() == n &&
         instance_labels.size() == n && semantic_labels.size() == n;
}

void LiftedScene::reserve(std::size_t n) {
  points.reserve(n);
  colors.reserve(n);
  pixel_refs.reserve(n);
  instance_labels.reserve(n);
  semantic_labels.reserve(n);
}

void LiftedScene::push_back(const Eigen::Vector3d& p, const Rgb& c,
                            const PixelCoord& ref) {
  points.push_back(p);
  colors.push_back(c);
  pixel_refs.push_back(ref);
  instance_labels.push_back(kUnlabeled);
  semantic_labels.push_back(kUnlabeled);
}

}  // namespace lift3d
