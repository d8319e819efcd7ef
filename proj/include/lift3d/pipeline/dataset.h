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

#include <filesystem>
#include <string>
#include <vector>

#include "lift3d/ingest/coco.h"
#include "lift3d/output/output.h"
#include "lift3d/scene.h"
#include "lift3d/stats/stats.h"

namespace lift3d {

struct SceneOutputs {
  LiftedScene scene;
  AnnotationDocument annotations;
};

// Reads the PLY and annotation files of an Ok manifest entry.
SceneOutputs load_scene_outputs(const std::filesystem::path& output_root,
                                const ManifestEntry& entry);

// Summaries of every Ok scene, in manifest order.
SceneStatistics collect_statistics(const std::filesystem::path& output_root,
                                   const DatasetManifest& manifest);

// Re-parses every output and checks the dataset invariants. With `doc`, the
// manifest must list each of its images exactly once. Returns one line per
// problem; empty means clean. `box_tol` absorbs float32 point storage.
std::vector<std::string> verify_outputs(const std::filesystem::path& output_root,
                                        const DatasetManifest& manifest,
                                        const CocoDocument* doc = nullptr,
                                        double box_tol = 1e-5);

}  // namespace lift3d
