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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lift3d/scene.h"

namespace lift3d {

inline constexpr std::string_view kAnnotationsSchema = "lift3d.annotations/1";
inline constexpr std::string_view kManifestSchema = "lift3d.manifest/1";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Binary little-endian PLY with vertex properties
//   float x, y, z; uchar red, green, blue; int instance_id, semantic_id
// in scene point order. Throws kContractViolation for an empty scene.
std::string write_point_cloud(const LiftedScene& scene);
// Reads any binary_little_endian PLY whose vertex element carries at least
// x, y, z. Pixel references are not stored in the file and come back as NaN.
LiftedScene read_point_cloud(std::string_view bytes);

struct AnnotationDocument {
  SceneAnnotations3D annotations;
  std::optional<SceneProvenance> provenance;
};

// Point indices are stored as half-open [begin, end) ranges. Throws
// kContractViolation for zero instances.
std::string write_annotations(const SceneAnnotations3D& annotations,
                              const SceneProvenance* provenance = nullptr);
AnnotationDocument read_annotations(std::string_view bytes);

enum class SceneStatus { kOk, kRejected };

struct ManifestEntry {
  std::string scene_id;
  std::int64_t image_id = 0;
  SceneStatus status = SceneStatus::kOk;
  std::string reason;  // machine-readable, empty for Ok scenes
  std::string detail;  // free text
  std::string point_cloud_path;   // relative to the output root
  std::string annotations_path;
  std::size_t point_count = 0;
  std::size_t instance_count = 0;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct DatasetManifest {
  std::string tool_version = std::string(kToolVersion);
  std::string config_fingerprint;
  std::vector<ManifestEntry> scenes;

  std::size_t ok_count() const;
  std::size_t rejected_count() const;
  const ManifestEntry* find(std::string_view scene_id) const;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

// JSON lines: a header line, then one scene per line sorted by scene id.
// Throws kDuplicateId.
std::string write_manifest(const DatasetManifest& manifest);
std::string manifest_header_line(const DatasetManifest& manifest);
std::string manifest_entry_line(const ManifestEntry& entry);
// With `tolerate_truncation`, an unparsable final line (an interrupted
// append) is dropped instead of raising.
DatasetManifest read_manifest(std::string_view bytes, bool tolerate_truncation = false);

}  // namespace lift3d
