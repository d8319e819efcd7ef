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
#include <string>
#include <string_view>

#include "lift3d/calibration/calibration.h"

namespace lift3d {

enum class ResampleMode { kNearest };

// Declarative pipeline configuration. Per-scene inputs are located by scene
// id under each root:
//   <images_root>/<id>.rgb          RGB8 raster
//   <relative_depth_root>/<id>.dpth depth raster, relative units
//   <metric_depth_root>/<id>.dpth   depth raster, meters
//   <camera_root>/<id>.json         camera prediction
// The scene id is the image file name without extension (see scene_ids_for).
struct PipelineConfig {
  std::filesystem::path images_root;
  std::filesystem::path relative_depth_root;
  std::filesystem::path metric_depth_root;
  std::filesystem::path camera_root;
  std::filesystem::path annotations;  // COCO instances JSON
  std::filesystem::path output_root;
  FilterPolicy filter;
  ResampleMode resample = ResampleMode::kNearest;
  int workers = 1;
  std::size_t review_n = 0;
  std::uint64_t review_seed = 0;
};

// Relative paths resolve against `base_dir`. Throws kConfig on bad values.
PipelineConfig parse_config(std::string_view json_bytes,
                            const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const PipelineConfig& config);

// Throws kConfig unless every input root exists and workers >= 1.
void validate_config(const PipelineConfig& config);

// Hash of everything that affects scene outputs (inputs, filter, resampling);
// worker count, output root and review settings are excluded.
std::string config_fingerprint(const PipelineConfig& config);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace lift3d
