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

#include "lift3d/pipeline/dataset.h"

#include <set>

#include "lift3d/error.h"
#include "lift3d/file_util.h"
#include "lift3d/pipeline/lift_scene.h"

namespace lift3d {
namespace fs = std::filesystem;

SceneOutputs load_scene_outputs(const fs::path& output_root, const ManifestEntry& entry) {
  LIFT3D_CHECK(entry.status == SceneStatus::kOk, "scene " + entry.scene_id + " is not Ok");
  SceneOutputs out;
  out.scene = read_point_cloud(read_file(output_root / entry.point_cloud_path));
  out.annotations = read_annotations(read_file(output_root / entry.annotations_path));
  return out;
}

SceneStatistics collect_statistics(const fs::path& output_root, const DatasetManifest& manifest) {
  SceneStatistics stats;
  for (const ManifestEntry& e : manifest.scenes) {
    if (e.status != SceneStatus::kOk) continue;
    const SceneOutputs out = load_scene_outputs(output_root, e);
    stats.add(summarize_scene(out.scene, out.annotations.annotations));
  }
  return stats;
}

std::vector<std::string> verify_outputs(const fs::path& output_root,
                                        const DatasetManifest& manifest,
                                        const CocoDocument* doc, double box_tol) {
  std::vector<std::string> problems;
  auto report = [&](const std::string& id, const std::string& what) {
    problems.push_back(id + ": " + what);
  };

  std::set<std::string> seen;
  for (std::size_t i = 0; i < manifest.scenes.size(); ++i) {
    const ManifestEntry& e = manifest.scenes[i];
    if (!seen.insert(e.scene_id).second) report(e.scene_id, "listed more than once");
    if (i > 0 && manifest.scenes[i - 1].scene_id >= e.scene_id) {
      report(e.scene_id, "manifest not sorted by scene id");
    }
    if (e.status == SceneStatus::kRejected) {
      if (e.reason.empty()) report(e.scene_id, "rejected without a reason");
      continue;
    }
    SceneOutputs out;
    try {
      out = load_scene_outputs(output_root, e);
    } catch (const std::exception& err) {
      report(e.scene_id, std::string("unreadable output: ") + err.what());
      continue;
    }
    const LiftedScene& scene = out.scene;
    const SceneAnnotations3D& ann = out.annotations.annotations;
    if (scene.size() != e.point_count) report(e.scene_id, "point count differs from manifest");
    if (ann.instances.size() != e.instance_count) {
      report(e.scene_id, "instance count differs from manifest");
    }
    if (ann.instances.empty()) report(e.scene_id, "Ok scene without annotated instances");
    if (ann.scene_id != e.scene_id) report(e.scene_id, "annotation scene id mismatch");

    std::set<std::int32_t> ids;
    for (const Instance3D& inst : ann.instances) {
      const std::string tag = "instance " + std::to_string(inst.instance_id);
      if (!ids.insert(inst.instance_id).second) report(e.scene_id, tag + " duplicated");
      if (inst.point_indices.empty()) report(e.scene_id, tag + " has no points");
      std::vector<std::uint8_t> listed(scene.size(), 0);
      for (std::size_t k = 0; k < inst.point_indices.size(); ++k) {
        const std::uint32_t idx = inst.point_indices[k];
        if (idx >= scene.size()) {
          report(e.scene_id, tag + " references a missing point");
          break;
        }
        if (k > 0 && inst.point_indices[k - 1] >= idx) {
          report(e.scene_id, tag + " point indices not ascending");
          break;
        }
        listed[idx] = 1;
      }
      // Overlapping masks relabel shared points, so only the converse holds:
      // a point carrying this instance's label is one of its points.
      for (std::size_t idx = 0; idx < scene.size(); ++idx) {
        if (scene.instance_labels[idx] == inst.instance_id && !listed[idx]) {
          report(e.scene_id, tag + " labels disagree with the cloud");
          break;
        }
      }
      if (!inst.box) {
        report(e.scene_id, tag + " has no box");
        continue;
      }
      const AlignedBox box = inst.box->aligned();
      for (std::uint32_t idx : inst.point_indices) {
        if (idx < scene.size() && !box.contains(scene.points[idx], box_tol)) {
          report(e.scene_id, tag + " box does not contain its points");
          break;
        }
      }
    }
  }

  if (doc) {
    std::set<std::string> expected;
    for (const auto& [id, image] : scene_ids_for(*doc)) {
      expected.insert(id);
      if (!seen.count(id)) report(id, "input scene missing from manifest");
    }
    for (const std::string& id : seen) {
      if (!expected.count(id)) report(id, "manifest lists a scene with no input");
    }
  }
  return problems;
}

}  // namespace lift3d
