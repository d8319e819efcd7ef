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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lift3d/ingest/mask.h"

namespace lift3d {

struct BBox2D {
  double x = 0, y = 0, w = 0, h = 0;
  friend bool operator==(const BBox2D&, const BBox2D&) = default;
};

// Clamp to [0, width] x [0, height], keeping w, h >= 0.
BBox2D clamp_bbox(const BBox2D& box, int width, int height);

using Segmentation = std::variant<std::monostate, PolygonSet, RleMask>;

struct Instance2D {
  std::int64_t annotation_id = 0;
  std::int64_t category_id = 0;
  Segmentation segmentation;
  std::optional<BBox2D> bbox;
  bool iscrowd = false;

  bool has_mask() const {
    return !std::holds_alternative<std::monostate>(segmentation);
  }
};

struct AnnotationSet2D {
  std::int64_t image_id = 0;
  std::string file_name;
  int width = 0;
  int height = 0;
  std::vector<Instance2D> instances;
  std::map<std::int64_t, std::string> category_names;
  // Instances that were skipped, with the reason.
  std::vector<std::string> warnings;
};

// Decodes an instance's segmentation into a mask on the image grid. Returns
// nullopt for bbox-only instances; throws on RLE whose size disagrees with the
// image.
std::optional<BitMask> instance_mask(const Instance2D& inst, int width,
                                     int height);

// Image entries of a COCO document: id, file_name, width, height.
struct CocoImage {
  std::int64_t id = 0;
  std::string file_name;
  int width = 0;
  int height = 0;
};

// A COCO instances document parsed once and queried per image.
class CocoDocument {
 public:
  static CocoDocument parse(std::string_view json_bytes);

  const std::vector<CocoImage>& images() const { return images_; }
  const std::map<std::int64_t, std::string>& categories() const {
    return categories_;
  }
  std::optional<CocoImage> find_image(std::int64_t image_id) const;

  // Throws kFormat if the image id is not listed under "images".
  AnnotationSet2D annotations_for(std::int64_t image_id) const;

 private:
  std::vector<CocoImage> images_;
  std::map<std::int64_t, std::size_t> image_index_;
  std::map<std::int64_t, std::string> categories_;
  std::map<std::int64_t, std::vector<Instance2D>> instances_;
  std::map<std::int64_t, std::vector<std::string>> warnings_;
};

AnnotationSet2D parse_coco_annotations(std::string_view json_bytes,
                                       std::int64_t image_id);

}  // namespace lift3d
