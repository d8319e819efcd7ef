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

#include "lift3d/annolift/annolift.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lift3d/camera/camera.h"
#include "lift3d/error.h"

namespace lift3d {

PointLookup build_point_lookup(const LiftedScene& scene) {
  PointLookup lookup{scene.width, scene.height,
                     std::vector<std::int64_t>(
                         static_cast<std::size_t>(scene.width) * scene.height, -1)};
  for (std::size_t i = 0; i < scene.pixel_refs.size(); ++i) {
    const int x = static_cast<int>(std::floor(scene.pixel_refs[i].u));
    const int y = static_cast<int>(std::floor(scene.pixel_refs[i].v));
    LIFT3D_CHECK(x >= 0 && y >= 0 && x < scene.width && y < scene.height,
                 "point references a pixel outside the source raster");
    lookup.point_of_pixel[static_cast<std::size_t>(y) * scene.width + x] =
        static_cast<std::int64_t>(i);
  }
  return lookup;
}

std::vector<std::uint32_t> lift_segmentation(const BitMask& mask, LiftedScene& scene,
                                             const InstanceIds& ids,
                                             const PointLookup* lookup) {
  LIFT3D_CHECK(mask.width == scene.width && mask.height == scene.height,
               "mask dimensions differ from the scene's source raster");
  PointLookup local;
  if (lookup == nullptr) {
    local = build_point_lookup(scene);
    lookup = &local;
  }
  std::vector<std::uint32_t> indices;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.at(x, y)) continue;
      const std::int64_t i = lookup->at(x, y);
      if (i < 0) continue;
      scene.instance_labels[static_cast<std::size_t>(i)] = ids.instance_id;
      scene.semantic_labels[static_cast<std::size_t>(i)] = ids.semantic_id;
      indices.push_back(static_cast<std::uint32_t>(i));
    }
  }
  // Row-major scan over a row-major point order is already ascending.
  return indices;
}

PixelRect pixel_rect(const BBox2D& bbox, int width, int height) {
  const BBox2D b = clamp_bbox(bbox, width, height);
  PixelRect r;
  r.x0 = static_cast<int>(std::ceil(b.x - 0.5));
  r.y0 = static_cast<int>(std::ceil(b.y - 0.5));
  r.x1 = static_cast<int>(std::floor(b.x + b.w - 0.5)) + 1;
  r.y1 = static_cast<int>(std::floor(b.y + b.h - 0.5)) + 1;
  r.x0 = std::clamp(r.x0, 0, width);
  r.y0 = std::clamp(r.y0, 0, height);
  r.x1 = std::clamp(r.x1, 0, width);
  r.y1 = std::clamp(r.y1, 0, height);
  return r;
}

std::optional<Box3D> lift_bbox(const BBox2D& bbox, const CalibratedDepthMap& depth,
                               const Intrinsics& k, const Extrinsics& e,
                               const InstanceIds& ids, const BitMask* region) {
  if (region != nullptr) {
    LIFT3D_CHECK(region->width == depth.width && region->height == depth.height,
                 "region mask dimensions differ from the depth map");
  }
  const BBox2D b = clamp_bbox(bbox, depth.width, depth.height);
  const PixelRect rect = pixel_rect(b, depth.width, depth.height);

  double d_min = std::numeric_limits<double>::infinity();
  double d_max = -std::numeric_limits<double>::infinity();
  for (int y = rect.y0; y < rect.y1; ++y) {
    for (int x = rect.x0; x < rect.x1; ++x) {
      if (!depth.mask.valid(x, y)) continue;
      if (region != nullptr && !region->at(x, y)) continue;
      const double d = depth.at(x, y);
      d_min = std::min(d_min, d);
      d_max = std::max(d_max, d);
    }
  }
  if (!(d_min <= d_max)) return std::nullopt;

  const PixelCoord corners[4] = {
      {b.x, b.y}, {b.x + b.w, b.y}, {b.x, b.y + b.h}, {b.x + b.w, b.y + b.h}};
  AlignedBox bound = AlignedBox::empty();
  for (const double d : {d_min, d_max}) {
    for (const PixelCoord& c : corners) {
      bound.extend(camera_to_world(unproject_pixel(c, d, k), e).p);
    }
  }
  Box3D box;
  box.center = bound.center();
  box.extents = bound.extents();
  box.instance_id = ids.instance_id;
  box.category_id = ids.semantic_id;
  return box;
}

AnnotationLiftResult build_scene_annotations(const AnnotationSet2D& set2d,
                                             LiftedScene& scene,
                                             const CalibratedDepthMap& depth,
                                             const Intrinsics& k,
                                             const Extrinsics& e) {
  LIFT3D_CHECK(set2d.width == scene.width && set2d.height == scene.height &&
                   depth.width == scene.width && depth.height == scene.height,
               "annotations, scene and depth map must share dimensions");
  AnnotationLiftResult result;
  result.annotations.image_id = set2d.image_id;
  result.annotations.scene_id = scene.scene_id;
  const PointLookup lookup = build_point_lookup(scene);

  for (std::size_t idx = 0; idx < set2d.instances.size(); ++idx) {
    const Instance2D& inst = set2d.instances[idx];
    const std::string tag = "annotation " + std::to_string(inst.annotation_id);
    if (inst.category_id < std::numeric_limits<std::int32_t>::min() ||
        inst.category_id > std::numeric_limits<std::int32_t>::max()) {
      result.log.push_back(tag + ": category id does not fit int32, dropped");
      continue;
    }
    const InstanceIds ids{static_cast<std::int32_t>(idx),
                          static_cast<std::int32_t>(inst.category_id)};

    Instance3D out;
    out.instance_id = ids.instance_id;
    out.source_annotation_id = inst.annotation_id;
    out.category_id = inst.category_id;
    if (auto it = set2d.category_names.find(inst.category_id);
        it != set2d.category_names.end()) {
      out.category_name = it->second;
    }

    std::optional<BitMask> mask;
    try {
      mask = instance_mask(inst, set2d.width, set2d.height);
    } catch (const Error& err) {
      result.log.push_back(tag + ": " + err.what() + ", dropped");
      continue;
    }

    if (mask) {
      const BitMask::Bounds bounds = mask->tight_bounds();
      if (bounds.w == 0) {
        result.log.push_back(tag + ": empty mask, dropped");
        continue;
      }
      out.point_indices = lift_segmentation(*mask, scene, ids, &lookup);
      if (out.point_indices.empty()) {
        result.log.push_back(tag + ": no valid points under mask, dropped");
        continue;
      }
      const BBox2D tight{static_cast<double>(bounds.x), static_cast<double>(bounds.y),
                         static_cast<double>(bounds.w), static_cast<double>(bounds.h)};
      out.box = lift_bbox(tight, depth, k, e, ids, &*mask);
    } else {
      const PixelRect rect = pixel_rect(*inst.bbox, set2d.width, set2d.height);
      for (int y = rect.y0; y < rect.y1; ++y) {
        for (int x = rect.x0; x < rect.x1; ++x) {
          const std::int64_t i = lookup.at(x, y);
          if (i >= 0) out.point_indices.push_back(static_cast<std::uint32_t>(i));
        }
      }
      if (out.point_indices.empty()) {
        result.log.push_back(tag + ": no valid points in bbox, dropped");
        continue;
      }
      out.box = lift_bbox(*inst.bbox, depth, k, e, ids);
    }
    result.annotations.instances.push_back(std::move(out));
  }
  if (result.rejected()) result.log.push_back("no instance survived lifting");
  return result;
}

}  // namespace lift3d
