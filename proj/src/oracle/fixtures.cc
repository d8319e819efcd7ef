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
#include <filesystem>
#include <limits>
#include <map>

#include <json.hpp>

#include "lift3d/error.h"
#include "lift3d/file_util.h"
#include "lift3d/ingest/camera_prediction.h"
#include "lift3d/ingest/coco.h"
#include "lift3d/oracle/oracle.h"

namespace lift3d::oracle {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::uint8_t kPalette[][3] = {
    {200, 60, 60}, {60, 180, 90}, {70, 110, 210}, {220, 180, 50}, {160, 80, 190}, {60, 190, 200},
};

const char* category_name(std::int64_t id) {
  switch (id) {
    case 1: return "person";
    case 2: return "chair";
    case 3: return "table";
    case 4: return "sign";
    default: return "object";
  }
}

ColorRaster shade(const GroundTruth& gt) {
  const int w = gt.spec.width;
  const int h = gt.spec.height;
  ColorRaster color(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int p = gt.primitive_at(x, y);
      if (p < 0) continue;
      std::uint8_t* px = &color.rgb[(static_cast<std::size_t>(y) * w + x) * 3];
      if (!gt.spec.primitives[p].annotated()) {
        // Backdrop: a checkerboard makes depth edges visible in previews.
        const std::uint8_t g = ((x / 16 + y / 16) % 2) ? 150 : 110;
        px[0] = px[1] = px[2] = g;
        continue;
      }
      const auto& c = kPalette[p % std::size(kPalette)];
      for (int ch = 0; ch < 3; ++ch) px[ch] = c[ch];
    }
  }
  return color;
}

json vec_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d vec_from(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

json camera_json(const SyntheticSceneSpec& s, const std::string& up_field_name) {
  const Eigen::Vector3d up = s.camera.R.row(2).transpose();
  json j = {{"fx", s.k.fx}, {"fy", s.k.fy}, {"cx", s.k.cx}, {"cy", s.k.cy},
            {"width", s.width}, {"height", s.height}, {"up", vec_json(up)}};
  if (!up_field_name.empty()) j["up_field"] = up_field_name;
  return j;
}

UpField uniform_up_field(const SyntheticSceneSpec& s) {
  UpField f;
  f.width = s.width;
  f.height = s.height;
  f.vectors.assign(static_cast<std::size_t>(s.width) * s.height, s.camera.R.row(2).transpose());
  return f;
}

json coco_document(const std::vector<const GroundTruth*>& scenes) {
  json images = json::array();
  json annotations = json::array();
  std::map<std::int64_t, bool> used;
  for (const GroundTruth* gt : scenes) {
    const SyntheticSceneSpec& s = gt->spec;
    images.push_back({{"id", image_id(s.index)},
                      {"file_name", s.scene_id + ".png"},
                      {"width", s.width},
                      {"height", s.height}});
    for (std::size_t p = 0; p < s.primitives.size(); ++p) {
      const Primitive& prim = s.primitives[p];
      if (!prim.annotated() || gt->masks[p].area() == 0) continue;
      const BitMask& mask = gt->masks[p];
      const RleMask rle = encode_rle_mask(mask);
      const BitMask::Bounds b = mask.tight_bounds();
      used[prim.category_id] = true;
      annotations.push_back(
          {{"id", annotation_id(s.index, static_cast<int>(p))},
           {"image_id", image_id(s.index)},
           {"category_id", prim.category_id},
           {"segmentation", {{"size", {s.height, s.width}}, {"counts", rle.counts}}},
           {"area", mask.area()},
           {"bbox", {b.x, b.y, b.w, b.h}},
           {"iscrowd", 0}});
    }
  }
  json categories = json::array();
  for (const auto& [id, _] : used) categories.push_back({{"id", id}, {"name", category_name(id)}});
  return {{"images", images}, {"annotations", annotations}, {"categories", categories}};
}

}  // namespace

std::int64_t annotation_id(int scene_index, int prim) {
  return static_cast<std::int64_t>(scene_index) * 1000 + prim + 1;
}

std::int64_t image_id(int scene_index) { return scene_index + 1; }

PipelineFixture make_pipeline_inputs(const GroundTruth& gt, double alpha,
                                     const FixtureOptions& options) {
  LIFT3D_CHECK(alpha > 0.0, "alpha must be positive");
  const SyntheticSceneSpec& s = gt.spec;
  PipelineFixture f;
  f.scene_id = s.scene_id;
  f.relative = DepthMap(s.width, s.height, DepthKind::kRelative);
  f.metric = DepthMap(s.width, s.height, DepthKind::kMetric);
  for (std::size_t i = 0; i < gt.depth.values.size(); ++i) {
    const double d = gt.depth.values[i];
    f.relative.values[i] = alpha * d;
    f.metric.values[i] = d + s.noise.metric_offset;
  }
  f.color = shade(gt);
  f.camera_json = camera_json(s, options.up_field ? s.scene_id + ".upvf" : "").dump(2) + "\n";
  if (options.up_field) f.up_field = encode_up_field(uniform_up_field(s));
  f.coco_json = coco_document({&gt}).dump() + "\n";
  return f;
}

SceneInputs to_scene_inputs(const PipelineFixture& fixture) {
  SceneInputs in;
  in.scene_id = fixture.scene_id;
  in.relative = fixture.relative;
  in.metric = fixture.metric;
  in.color = fixture.color;
  json cam = json::parse(fixture.camera_json);
  cam.erase("up_field");
  in.camera = parse_camera_prediction(cam.dump(), {});
  if (!fixture.up_field.empty()) in.camera.gravity.field = load_up_field(fixture.up_field);
  const CocoDocument doc = CocoDocument::parse(fixture.coco_json);
  LIFT3D_CHECK(doc.images().size() == 1, "fixture must hold exactly one image");
  in.annotations = doc.annotations_for(doc.images().front().id);
  return in;
}

PipelineConfig write_fixture_set(const std::vector<GroundTruth>& scenes, const fs::path& dir,
                                 const FixtureOptions& options) {
  for (const char* sub : {"images", "relative", "metric", "camera"}) {
    std::error_code ec;
    fs::create_directories(dir / sub, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + (dir / sub).string());
  }
  std::vector<const GroundTruth*> refs;
  std::vector<SyntheticSceneSpec> specs;
  for (const GroundTruth& gt : scenes) {
    const std::string& id = gt.spec.scene_id;
    const PipelineFixture f = make_pipeline_inputs(gt, gt.spec.alpha, options);
    write_file(dir / "images" / (id + ".rgb"), encode_color_raster(f.color));
    write_file(dir / "relative" / (id + ".dpth"), encode_depth_raster(f.relative, options.depth_dtype));
    write_file(dir / "metric" / (id + ".dpth"), encode_depth_raster(f.metric, options.depth_dtype));
    write_file(dir / "camera" / (id + ".json"), f.camera_json);
    if (!f.up_field.empty()) write_file(dir / "camera" / (id + ".upvf"), f.up_field);
    refs.push_back(&gt);
    specs.push_back(gt.spec);
  }
  write_file(dir / "annotations.json", coco_document(refs).dump() + "\n");
  write_file(dir / "specs.json", specs_to_json(specs));
  const json config = {{"images_root", "images"},
                       {"relative_depth_root", "relative"},
                       {"metric_depth_root", "metric"},
                       {"camera_root", "camera"},
                       {"annotations", "annotations.json"},
                       {"output_root", "out"},
                       {"workers", 1}};
  const std::string bytes = config.dump(2) + "\n";
  write_file(dir / "config.json", bytes);
  return parse_config(bytes, fs::absolute(dir));
}

std::string specs_to_json(const std::vector<SyntheticSceneSpec>& specs) {
  json arr = json::array();
  for (const SyntheticSceneSpec& s : specs) {
    json prims = json::array();
    for (const Primitive& p : s.primitives) {
      json jp = {{"kind", p.kind == PrimitiveKind::kPlane ? "plane" : "box"},
                 {"category_id", p.category_id}};
      if (p.kind == PrimitiveKind::kPlane) {
        jp["center"] = vec_json(p.center);
        jp["axis_u"] = vec_json(p.axis_u);
        jp["axis_v"] = vec_json(p.axis_v);
        jp["half_u"] = p.half_u;
        jp["half_v"] = p.half_v;
      } else {
        jp["min"] = vec_json(p.box_min);
        jp["max"] = vec_json(p.box_max);
      }
      prims.push_back(std::move(jp));
    }
    json r = json::array();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) r.push_back(s.camera.R(i, j));
    }
    arr.push_back({{"scene_id", s.scene_id},
                   {"index", s.index},
                   {"width", s.width},
                   {"height", s.height},
                   {"intrinsics", {{"fx", s.k.fx}, {"fy", s.k.fy}, {"cx", s.k.cx}, {"cy", s.k.cy}}},
                   {"rotation", r},
                   {"translation", vec_json(s.camera.T)},
                   {"alpha", s.alpha},
                   {"metric_offset", s.noise.metric_offset},
                   {"primitives", prims}});
  }
  return json({{"schema", "lift3d.oracle_specs/1"}, {"scenes", arr}}).dump(1) + "\n";
}

std::vector<SyntheticSceneSpec> specs_from_json(std::string_view bytes) {
  json root;
  try {
    root = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  std::vector<SyntheticSceneSpec> out;
  try {
    for (const json& js : root.at("scenes")) {
      SyntheticSceneSpec s;
      s.scene_id = js.at("scene_id").get<std::string>();
      s.index = js.at("index").get<int>();
      s.width = js.at("width").get<int>();
      s.height = js.at("height").get<int>();
      const json& k = js.at("intrinsics");
      s.k = Intrinsics{k.at("fx").get<double>(), k.at("fy").get<double>(),
                       k.at("cx").get<double>(), k.at("cy").get<double>()};
      const json& r = js.at("rotation");
      for (int i = 0; i < 9; ++i) s.camera.R(i / 3, i % 3) = r.at(i).get<double>();
      s.camera.T = vec_from(js.at("translation"));
      s.alpha = js.at("alpha").get<double>();
      s.noise.metric_offset = js.value("metric_offset", 0.0);
      for (const json& jp : js.at("primitives")) {
        const std::int64_t cat = jp.at("category_id").get<std::int64_t>();
        if (jp.at("kind").get<std::string>() == "plane") {
          Primitive p = Primitive::plane(vec_from(jp.at("center")), vec_from(jp.at("axis_u")),
                                         vec_from(jp.at("axis_v")), jp.at("half_u").get<double>(),
                                         jp.at("half_v").get<double>(), cat);
          // Keep the stored axes bit-exact rather than renormalized.
          p.axis_u = vec_from(jp.at("axis_u"));
          p.axis_v = vec_from(jp.at("axis_v"));
          s.primitives.push_back(p);
        } else {
          s.primitives.push_back(Primitive::box(vec_from(jp.at("min")), vec_from(jp.at("max")), cat));
        }
      }
      out.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad oracle spec: ") + e.what());
  }
  return out;
}

}  // namespace lift3d::oracle
