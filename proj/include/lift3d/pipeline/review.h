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
#include <vector>

#include "lift3d/ingest/coco.h"
#include "lift3d/ingest/raster.h"
#include "lift3d/output/output.h"
#include "lift3d/pipeline/config.h"

namespace lift3d {

// Seeded sample of min(n, ok_count) Ok scene ids, in draw order. A clamped n
// is reported through `warning` when given.
std::vector<std::string> select_review_sample(const DatasetManifest& manifest, std::size_t n,
                                              std::uint64_t seed, std::string* warning = nullptr);

// Source image on the left, source image with instance masks blended on the
// right.
ColorRaster side_by_side_overlay(const ColorRaster& source, const AnnotationSet2D& annotations);

struct ReviewBundle {
  std::filesystem::path directory;
  std::vector<std::string> scene_ids;
  std::vector<std::string> warnings;
};

// Writes <review_dir>/<scene_id>/{side_by_side.ppm, cloud.ply,
// annotations.json} per sampled scene plus <review_dir>/bundle.json.
ReviewBundle sample_for_review(const PipelineConfig& config, const DatasetManifest& manifest,
                               std::size_t n, std::uint64_t seed,
                               const std::filesystem::path& review_dir);

}  // namespace lift3d
