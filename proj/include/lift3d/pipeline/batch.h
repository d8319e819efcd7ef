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
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "lift3d/output/output.h"
#include "lift3d/pipeline/config.h"
#include "lift3d/pipeline/lift_scene.h"

namespace lift3d {

inline constexpr const char* kManifestFileName = "manifest.jsonl";
inline constexpr const char* kScenesDirName = "scenes";

std::filesystem::path manifest_path(const PipelineConfig& config);

struct BatchOptions {
  // Skip scenes already recorded in an existing manifest.
  bool resume = false;
  // Receives one line per noteworthy event; may be called from any worker.
  std::function<void(const std::string&)> log;
};

struct BatchResult {
  DatasetManifest manifest;
  std::size_t processed = 0;
  std::size_t skipped = 0;

  // 0 when every scene is Ok, 1 when some were rejected.
  int exit_code() const { return manifest.rejected_count() == 0 ? 0 : 1; }
};

// Lifts every image of the annotation document. Scenes are processed by
// config.workers threads; manifest lines are committed in scene-id order by a
// single committer, so output bytes do not depend on the worker count.
// Throws kConfig/kIo for startup failures; per-scene failures become
// Rejected entries.
BatchResult run_batch(const PipelineConfig& config, const BatchOptions& options = {});

// Runs one scene end to end and writes its files; never throws.
ManifestEntry process_scene(const PipelineConfig& config, const CocoDocument& doc,
                            const std::string& scene_id, const CocoImage& image);

}  // namespace lift3d
