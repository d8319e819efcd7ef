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
#include <map>

#include <json.hpp>

#include "lift3d/error.h"
#include "lift3d/file_util.h"
#include "lift3d/oracle/oracle.h"
#include "lift3d/stats/stats.h"

namespace lift3d::oracle {
namespace {

// Pixel index of point i, or -1 when it falls outside the image.
std::int64_t source_pixel(const LiftedScene& scene, std::size_t i, const GroundTruth& gt) {
  const SyntheticSceneSpec& s = gt.spec;
  double u = 0.0;
  double v = 0.0;
  if (i < scene.pixel_refs.size() && std::isfinite(scene.pixel_refs[i].u) &&
      std::isfinite(scene.pixel_refs[i].v)) {
    u = scene.pixel_refs[i].u;
    v = scene.pixel_refs[i].v;
  } else {
    // Output world has its origin at the camera center.
    const Eigen::Vector3d cam = s.camera.R.transpose() * scene.points[i];
    if (!(cam.z() > 0.0)) return -1;
    u = s.k.fx * cam.x() / cam.z() + s.k.cx;
    v = s.k.fy * cam.y() / cam.z() + s.k.cy;
  }
  const double col = std::floor(u);
  const double row = std::floor(v);
  if (col < 0 || row < 0 || col >= s.width || row >= s.height) return -1;
  return static_cast<std::int64_t>(row) * s.width + static_cast<std::int64_t>(col);
}

}  // namespace

SceneScore score_scene(const LiftedScene& scene, const SceneAnnotations3D& annotations,
                       const GroundTruth& gt, double contain_tol) {
  const SyntheticSceneSpec& s = gt.spec;
  SceneScore out;
  out.scene_id = s.scene_id;

  std::vector<std::int64_t> pixel(scene.size(), -1);
  std::vector<std::uint8_t> has_point(gt.hit.size(), 0);
  double sq = 0.0;
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const std::int64_t px = source_pixel(scene, i, gt);
    if (px < 0 || gt.hit[px] < 0) {
      ++out.unmatched_points;
      continue;
    }
    pixel[i] = px;
    has_point[px] = 1;
    sq += (scene.points[i] - (gt.cloud[px] - s.camera.T)).squaredNorm();
    ++out.matched_points;
  }
  out.cloud_rmse = out.matched_points ? std::sqrt(sq / out.matched_points) : 0.0;

  std::map<std::int64_t, const Instance3D*> by_annotation;
  for (const Instance3D& inst : annotations.instances) {
    by_annotation[inst.source_annotation_id] = &inst;
  }
  for (std::size_t p = 0; p < s.primitives.size(); ++p) {
    const Primitive& prim = s.primitives[p];
    if (!prim.annotated() || gt.masks[p].area() == 0) continue;
    InstanceScore is;
    is.primitive = static_cast<int>(p);
    is.annotation_id = annotation_id(s.index, static_cast<int>(p));
    is.category_id = prim.category_id;
    if (prim.kind == PrimitiveKind::kBox) is.planted_height = prim.box_max.z() - prim.box_min.z();

    auto it = by_annotation.find(is.annotation_id);
    if (it != by_annotation.end()) {
      const Instance3D& inst = *it->second;
      is.found = true;
      std::vector<std::uint8_t> predicted(gt.hit.size(), 0);
      std::vector<Eigen::Vector3d> pts;
      pts.reserve(inst.point_indices.size());
      for (std::uint32_t idx : inst.point_indices) {
        if (idx >= scene.size()) continue;
        pts.push_back(scene.points[idx]);
        if (pixel[idx] >= 0) predicted[pixel[idx]] = 1;
      }
      std::size_t inter = 0;
      std::size_t uni = 0;
      for (std::size_t px = 0; px < gt.hit.size(); ++px) {
        const bool ref = has_point[px] && gt.hit[px] == static_cast<int>(p);
        inter += ref && predicted[px];
        uni += ref || predicted[px];
      }
      is.label_iou = uni ? static_cast<double>(inter) / uni : 1.0;

      if (inst.box) {
        const AlignedBox predicted_box = inst.box->aligned();
        AlignedBox truth = gt.boxes[p];
        truth.min -= s.camera.T;
        truth.max -= s.camera.T;
        is.box_iou = box_iou(predicted_box, truth);
        is.box_contains_points = true;
        for (const Eigen::Vector3d& q : pts) {
          if (!predicted_box.contains(q, contain_tol)) {
            is.box_contains_points = false;
            break;
          }
        }
      }
      is.height = object_height(pts);
      if (is.planted_height > 0.0) is.height_error = std::abs(is.height - is.planted_height);
    }
    out.instances.push_back(is);
  }
  return out;
}

RunScore score_run(const std::filesystem::path& output_root, const DatasetManifest& manifest,
                   const std::vector<GroundTruth>& truth) {
  RunScore run;
  for (const GroundTruth& gt : truth) {
    const ManifestEntry* e = manifest.find(gt.spec.scene_id);
    if (!e || e->status != SceneStatus::kOk) {
      run.unmatched.push_back(gt.spec.scene_id);
      continue;
    }
    const LiftedScene scene = read_point_cloud(read_file(output_root / e->point_cloud_path));
    const AnnotationDocument doc = read_annotations(read_file(output_root / e->annotations_path));
    run.scenes.push_back(score_scene(scene, doc.annotations, gt, 1e-6));
  }
  for (const SceneScore& s : run.scenes) {
    run.max_rmse = std::max(run.max_rmse, s.cloud_rmse);
    for (const InstanceScore& i : s.instances) {
      run.min_label_iou = std::min(run.min_label_iou, i.found ? i.label_iou : 0.0);
      run.min_box_iou = std::min(run.min_box_iou, i.found ? i.box_iou : 0.0);
      run.max_height_error = std::max(run.max_height_error, i.height_error);
    }
  }
  return run;
}

std::string score_report_json(const RunScore& score) {
  using json = nlohmann::ordered_json;
  json scenes = json::array();
  for (const SceneScore& s : score.scenes) {
    json inst = json::array();
    for (const InstanceScore& i : s.instances) {
      inst.push_back({{"annotation_id", i.annotation_id},
                      {"category_id", i.category_id},
                      {"found", i.found},
                      {"label_iou", i.label_iou},
                      {"box_iou", i.box_iou},
                      {"box_contains_points", i.box_contains_points},
                      {"height", i.height},
                      {"planted_height", i.planted_height},
                      {"height_error", i.height_error}});
    }
    scenes.push_back({{"scene_id", s.scene_id},
                      {"matched_points", s.matched_points},
                      {"unmatched_points", s.unmatched_points},
                      {"cloud_rmse", s.cloud_rmse},
                      {"instances", inst}});
  }
  json root = {{"schema", "lift3d.oracle_score/1"},
               {"scored_scenes", score.scenes.size()},
               {"unmatched_scenes", score.unmatched},
               {"max_cloud_rmse", score.max_rmse},
               {"min_label_iou", score.min_label_iou},
               {"min_box_iou", score.min_box_iou},
               {"max_height_error", score.max_height_error},
               {"scenes", scenes}};
  return root.dump(2) + "\n";
}

}  // namespace lift3d::oracle
