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

#include "lift3d/ingest/coco.h"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "lift3d/error.h"

namespace lift3d {
namespace {

using json = nlohmann::json;

std::optional<std::int64_t> as_int(const json& v) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d)) return static_cast<std::int64_t>(d);
  }
  return std::nullopt;
}

std::optional<Polygon> as_polygon(const json& v) {
  if (!v.is_array()) return std::nullopt;
  Polygon poly;
  poly.reserve(v.size());
  for (const json& c : v) {
    if (!c.is_number()) return std::nullopt;
    poly.push_back(c.get<double>());
  }
  return poly;
}

// Returns the segmentation, or monostate plus a note when unusable.
Segmentation parse_segmentation(const json& seg, std::string* note) {
  if (seg.is_array()) {
    if (seg.empty()) return std::monostate{};
    PolygonSet polys;
    if (seg.front().is_number()) {
      if (auto p = as_polygon(seg)) polys.push_back(std::move(*p));
    } else {
      for (const json& part : seg) {
        if (auto p = as_polygon(part)) {
          polys.push_back(std::move(*p));
        } else {
          *note = "non-numeric polygon dropped";
        }
      }
    }
    if (polys.empty()) return std::monostate{};
    return polys;
  }
  if (seg.is_object()) {
    const auto size = seg.find("size");
    const auto counts = seg.find("counts");
    if (size == seg.end() || counts == seg.end() || !size->is_array() ||
        size->size() != 2) {
      *note = "RLE segmentation without size/counts";
      return std::monostate{};
    }
    const auto h = as_int((*size)[0]);
    const auto w = as_int((*size)[1]);
    if (!h || !w || *h < 0 || *w < 0 || *h > INT32_MAX || *w > INT32_MAX) {
      *note = "RLE segmentation with invalid size";
      return std::monostate{};
    }
    RleMask rle{static_cast<int>(*w), static_cast<int>(*h), {}};
    if (counts->is_string()) {
      try {
        rle.counts = rle_counts_from_string(counts->get<std::string>());
      } catch (const Error& e) {
        *note = e.what();
        return std::monostate{};
      }
    } else if (counts->is_array()) {
      for (const json& c : *counts) {
        const auto n = as_int(c);
        if (!n || *n < 0 || *n > static_cast<std::int64_t>(UINT32_MAX)) {
          *note = "RLE counts must be non-negative integers";
          return std::monostate{};
        }
        rle.counts.push_back(static_cast<std::uint32_t>(*n));
      }
    } else {
      *note = "RLE counts must be a list or string";
      return std::monostate{};
    }
    return rle;
  }
  if (!seg.is_null()) *note = "unrecognized segmentation type";
  return std::monostate{};
}

std::optional<BBox2D> parse_bbox(const json& v) {
  if (!v.is_array() || v.size() != 4) return std::nullopt;
  BBox2D b;
  double* dst[] = {&b.x, &b.y, &b.w, &b.h};
  for (int i = 0; i < 4; ++i) {
    if (!v[i].is_number()) return std::nullopt;
    *dst[i] = v[i].get<double>();
  }
  return b;
}

}  // namespace

BBox2D clamp_bbox(const BBox2D& box, int width, int height) {
  const double w = static_cast<double>(width);
  const double h = static_cast<double>(height);
  const double x0 = std::clamp(box.x, 0.0, w);
  const double y0 = std::clamp(box.y, 0.0, h);
  const double x1 = std::clamp(box.x + std::max(box.w, 0.0), 0.0, w);
  const double y1 = std::clamp(box.y + std::max(box.h, 0.0), 0.0, h);
  return {x0, y0, x1 - x0, y1 - y0};
}

std::optional<BitMask> instance_mask(const Instance2D& inst, int width,
                                     int height) {
  if (const auto* polys = std::get_if<PolygonSet>(&inst.segmentation)) {
    return rasterize_polygons(*polys, width, height);
  }
  if (const auto* rle = std::get_if<RleMask>(&inst.segmentation)) {
    if (rle->width != width || rle->height != height) {
      throw Error(ErrorCode::kFormat,
                  "RLE size " + std::to_string(rle->height) + "x" +
                      std::to_string(rle->width) + " does not match image " +
                      std::to_string(height) + "x" + std::to_string(width));
    }
    return decode_rle_mask(*rle);
  }
  return std::nullopt;
}

CocoDocument CocoDocument::parse(std::string_view json_bytes) {
  json root;
  try {
    root = json::parse(json_bytes.begin(), json_bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!root.is_object()) {
    throw ParseError("COCO document root must be an object", 0);
  }

  CocoDocument doc;
  if (auto it = root.find("images"); it != root.end() && it->is_array()) {
    for (const json& img : *it) {
      if (!img.is_object()) continue;
      const auto id = img.contains("id") ? as_int(img["id"]) : std::nullopt;
      const auto w = img.contains("width") ? as_int(img["width"]) : std::nullopt;
      const auto h = img.contains("height") ? as_int(img["height"]) : std::nullopt;
      if (!id || !w || !h || *w <= 0 || *h <= 0 || *w > INT32_MAX ||
          *h > INT32_MAX) {
        continue;
      }
      CocoImage ci{*id, "", static_cast<int>(*w), static_cast<int>(*h)};
      if (auto fn = img.find("file_name"); fn != img.end() && fn->is_string()) {
        ci.file_name = fn->get<std::string>();
      }
      if (doc.image_index_.count(ci.id)) continue;
      doc.image_index_[ci.id] = doc.images_.size();
      doc.images_.push_back(std::move(ci));
    }
  }

  if (auto it = root.find("categories"); it != root.end() && it->is_array()) {
    for (const json& cat : *it) {
      if (!cat.is_object() || !cat.contains("id")) continue;
      const auto id = as_int(cat["id"]);
      if (!id) continue;
      std::string name;
      if (auto nm = cat.find("name"); nm != cat.end() && nm->is_string()) {
        name = nm->get<std::string>();
      }
      doc.categories_[*id] = name;
    }
  }

  if (auto it = root.find("annotations"); it != root.end() && it->is_array()) {
    std::size_t index = 0;
    for (const json& ann : *it) {
      const std::size_t this_index = index++;
      if (!ann.is_object()) continue;
      const auto image_id =
          ann.contains("image_id") ? as_int(ann["image_id"]) : std::nullopt;
      if (!image_id) continue;
      auto& warnings = doc.warnings_[*image_id];

      Instance2D inst;
      inst.annotation_id = static_cast<std::int64_t>(this_index) + 1;
      if (auto id = ann.find("id"); id != ann.end()) {
        if (auto v = as_int(*id)) inst.annotation_id = *v;
      }
      const std::string tag = "annotation " + std::to_string(inst.annotation_id);
      if (auto c = ann.find("category_id"); c != ann.end()) {
        if (auto v = as_int(*c)) inst.category_id = *v;
      }
      if (auto s = ann.find("segmentation"); s != ann.end()) {
        std::string note;
        inst.segmentation = parse_segmentation(*s, &note);
        if (!note.empty()) warnings.push_back(tag + ": " + note);
      }
      if (auto b = ann.find("bbox"); b != ann.end()) inst.bbox = parse_bbox(*b);
      if (auto c = ann.find("iscrowd"); c != ann.end()) {
        if (c->is_boolean()) {
          inst.iscrowd = c->get<bool>();
        } else if (auto v = as_int(*c)) {
          inst.iscrowd = *v != 0;
        }
      }
      if (!inst.has_mask() && !inst.bbox) {
        warnings.push_back(tag + ": neither segmentation nor bbox, skipped");
        continue;
      }
      doc.instances_[*image_id].push_back(std::move(inst));
    }
  }
  return doc;
}

std::optional<CocoImage> CocoDocument::find_image(std::int64_t image_id) const {
  auto it = image_index_.find(image_id);
  if (it == image_index_.end()) return std::nullopt;
  return images_[it->second];
}

AnnotationSet2D CocoDocument::annotations_for(std::int64_t image_id) const {
  const auto image = find_image(image_id);
  if (!image) {
    throw Error(ErrorCode::kFormat,
                "image " + std::to_string(image_id) + " not listed in document");
  }
  AnnotationSet2D set;
  set.image_id = image_id;
  set.file_name = image->file_name;
  set.width = image->width;
  set.height = image->height;
  set.category_names = categories_;
  if (auto it = instances_.find(image_id); it != instances_.end()) {
    set.instances = it->second;
    for (Instance2D& inst : set.instances) {
      if (inst.bbox) inst.bbox = clamp_bbox(*inst.bbox, set.width, set.height);
    }
  }
  if (auto it = warnings_.find(image_id); it != warnings_.end()) {
    set.warnings = it->second;
  }
  return set;
}

AnnotationSet2D parse_coco_annotations(std::string_view json_bytes,
                                       std::int64_t image_id) {
  return CocoDocument::parse(json_bytes).annotations_for(image_id);
}

}  // namespace lift3d
