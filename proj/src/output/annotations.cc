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

#include <json.hpp>

#include "lift3d/error.h"
#include "lift3d/output/output.h"

namespace lift3d {
namespace {

using json = nlohmann::ordered_json;

json vec3(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d to_vec3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::kFormat, "expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json index_ranges(const std::vector<std::uint32_t>& idx) {
  json ranges = json::array();
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i + 1;
    while (j < idx.size() && idx[j] == idx[j - 1] + 1) ++j;
    ranges.push_back(json::array({idx[i], static_cast<std::uint64_t>(idx[j - 1]) + 1}));
    i = j;
  }
  return ranges;
}

std::vector<std::uint32_t> expand_ranges(const json& ranges) {
  std::vector<std::uint32_t> idx;
  for (const json& r : ranges) {
    if (!r.is_array() || r.size() != 2) throw Error(ErrorCode::kFormat, "bad point range");
    const auto begin = r[0].get<std::uint64_t>();
    const auto end = r[1].get<std::uint64_t>();
    if (end < begin || end > UINT32_MAX + std::uint64_t{1}) {
      throw Error(ErrorCode::kFormat, "bad point range bounds");
    }
    for (std::uint64_t k = begin; k < end; ++k) idx.push_back(static_cast<std::uint32_t>(k));
  }
  return idx;
}

json matrix3(const Eigen::Matrix3d& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(json::array({m(r, 0), m(r, 1), m(r, 2)}));
  return rows;
}

Eigen::Matrix3d to_matrix3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::kFormat, "expected 3x3 matrix");
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r) m.row(r) = to_vec3(j[r]).transpose();
  return m;
}

json provenance_json(const SceneProvenance& p) {
  json out;
  out["scale"] = {{"s", p.scale},
                  {"valid_count", p.valid_count},
                  {"mean_metric", p.mean_metric},
                  {"mean_relative", p.mean_relative}};
  json counts = json::object();
  for (const auto& [name, n] : p.pixel_status_counts) counts[name] = n;
  out["pixel_status_counts"] = counts;
  out["intrinsics"] = {{"fx", p.intrinsics.fx},
                       {"fy", p.intrinsics.fy},
                       {"cx", p.intrinsics.cx},
                       {"cy", p.intrinsics.cy}};
  out["extrinsics"] = {{"R", matrix3(p.extrinsics.R)}, {"T", vec3(p.extrinsics.T)}};
  out["gravity"] = {{"status", p.gravity_status},
                    {"up_camera", vec3(p.up_camera)},
                    {"latitude_samples", p.latitude_samples}};
  out["log"] = p.log;
  return out;
}

SceneProvenance provenance_from_json(const json& j) {
  SceneProvenance p;
  const json& s = j.at("scale");
  p.scale = s.at("s").get<double>();
  p.valid_count = s.at("valid_count").get<std::size_t>();
  p.mean_metric = s.at("mean_metric").get<double>();
  p.mean_relative = s.at("mean_relative").get<double>();
  for (const auto& [name, n] : j.at("pixel_status_counts").items()) {
    p.pixel_status_counts.emplace_back(name, n.get<std::size_t>());
  }
  const json& k = j.at("intrinsics");
  p.intrinsics = {k.at("fx").get<double>(), k.at("fy").get<double>(),
                  k.at("cx").get<double>(), k.at("cy").get<double>()};
  p.extrinsics.R = to_matrix3(j.at("extrinsics").at("R"));
  p.extrinsics.T = to_vec3(j.at("extrinsics").at("T"));
  const json& g = j.at("gravity");
  p.gravity_status = g.at("status").get<std::string>();
  p.up_camera = to_vec3(g.at("up_camera"));
  p.latitude_samples = g.at("latitude_samples").get<std::size_t>();
  p.log = j.at("log").get<std::vector<std::string>>();
  return p;
}

}  // namespace

std::string write_annotations(const SceneAnnotations3D& annotations,
                              const SceneProvenance* provenance) {
  LIFT3D_CHECK(!annotations.instances.empty(),
               "refusing to write annotations without instances");
  json doc;
  doc["schema"] = kAnnotationsSchema;
  doc["scene_id"] = annotations.scene_id;
  doc["image_id"] = annotations.image_id;
  json instances = json::array();
  for (const Instance3D& inst : annotations.instances) {
    json j;
    j["instance_id"] = inst.instance_id;
    j["source_annotation_id"] = inst.source_annotation_id;
    j["category_id"] = inst.category_id;
    j["category_name"] = inst.category_name;
    j["point_count"] = inst.point_indices.size();
    j["point_ranges"] = index_ranges(inst.point_indices);
    if (inst.box) {
      LIFT3D_CHECK(inst.box->center.allFinite() && inst.box->extents.allFinite(),
                   "box coordinates must be finite");
      j["box"] = {{"center", vec3(inst.box->center)},
                  {"extents", vec3(inst.box->extents)}};
    } else {
      j["box"] = nullptr;
    }
    instances.push_back(std::move(j));
  }
  doc["instances"] = std::move(instances);
  if (provenance != nullptr) doc["provenance"] = provenance_json(*provenance);
  return doc.dump(1) + "\n";
}

AnnotationDocument read_annotations(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  try {
    if (doc.at("schema").get<std::string>() != kAnnotationsSchema) {
      throw Error(ErrorCode::kFormat, "unsupported annotation schema");
    }
    AnnotationDocument out;
    SceneAnnotations3D& a = out.annotations;
    a.scene_id = doc.at("scene_id").get<std::string>();
    a.image_id = doc.at("image_id").get<std::int64_t>();
    for (const json& j : doc.at("instances")) {
      Instance3D inst;
      inst.instance_id = j.at("instance_id").get<std::int32_t>();
      inst.source_annotation_id = j.at("source_annotation_id").get<std::int64_t>();
      inst.category_id = j.at("category_id").get<std::int64_t>();
      inst.category_name = j.at("category_name").get<std::string>();
      inst.point_indices = expand_ranges(j.at("point_ranges"));
      if (inst.point_indices.size() != j.at("point_count").get<std::size_t>()) {
        throw Error(ErrorCode::kFormat, "point_count disagrees with point_ranges");
      }
      const json& box = j.at("box");
      if (!box.is_null()) {
        Box3D b;
        b.center = to_vec3(box.at("center"));
        b.extents = to_vec3(box.at("extents"));
        b.instance_id = inst.instance_id;
        b.category_id = inst.category_id;
        inst.box = b;
      }
      a.instances.push_back(std::move(inst));
    }
    if (auto it = doc.find("provenance"); it != doc.end()) {
      out.provenance = provenance_from_json(*it);
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("annotation document: ") + e.what());
  }
}

}  // namespace lift3d
