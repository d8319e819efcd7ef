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

#include <algorithm>
#include <set>

#include <json.hpp>

#include "lift3d/error.h"
#include "lift3d/output/output.h"

namespace lift3d {
namespace {

using json = nlohmann::ordered_json;

ManifestEntry entry_from_json(const json& j) {
  ManifestEntry e;
  e.scene_id = j.at("scene_id").get<std::string>();
  e.image_id = j.at("image_id").get<std::int64_t>();
  const std::string status = j.at("status").get<std::string>();
  if (status == "ok") {
    e.status = SceneStatus::kOk;
  } else if (status == "rejected") {
    e.status = SceneStatus::kRejected;
  } else {
    throw Error(ErrorCode::kFormat, "unknown scene status " + status);
  }
  e.reason = j.at("reason").get<std::string>();
  e.detail = j.at("detail").get<std::string>();
  const json& files = j.at("files");
  e.point_cloud_path = files.at("point_cloud").get<std::string>();
  e.annotations_path = files.at("annotations").get<std::string>();
  e.point_count = j.at("point_count").get<std::size_t>();
  e.instance_count = j.at("instance_count").get<std::size_t>();
  return e;
}

}  // namespace

std::size_t DatasetManifest::ok_count() const {
  return static_cast<std::size_t>(std::count_if(
      scenes.begin(), scenes.end(),
      [](const ManifestEntry& e) { return e.status == SceneStatus::kOk; }));
}

std::size_t DatasetManifest::rejected_count() const { return scenes.size() - ok_count(); }

const ManifestEntry* DatasetManifest::find(std::string_view scene_id) const {
  for (const ManifestEntry& e : scenes) {
    if (e.scene_id == scene_id) return &e;
  }
  return nullptr;
}

std::string manifest_header_line(const DatasetManifest& manifest) {
  json h;
  h["schema"] = kManifestSchema;
  h["tool_version"] = manifest.tool_version;
  h["config_fingerprint"] = manifest.config_fingerprint;
  return h.dump() + "\n";
}

std::string manifest_entry_line(const ManifestEntry& e) {
  json j;
  j["scene_id"] = e.scene_id;
  j["image_id"] = e.image_id;
  j["status"] = e.status == SceneStatus::kOk ? "ok" : "rejected";
  j["reason"] = e.reason;
  j["detail"] = e.detail;
  j["files"] = {{"point_cloud", e.point_cloud_path}, {"annotations", e.annotations_path}};
  j["point_count"] = e.point_count;
  j["instance_count"] = e.instance_count;
  return j.dump() + "\n";
}

std::string write_manifest(const DatasetManifest& manifest) {
  std::vector<const ManifestEntry*> order;
  order.reserve(manifest.scenes.size());
  for (const ManifestEntry& e : manifest.scenes) order.push_back(&e);
  std::sort(order.begin(), order.end(),
            [](const ManifestEntry* a, const ManifestEntry* b) {
              return a->scene_id < b->scene_id;
            });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i]->scene_id == order[i - 1]->scene_id) {
      throw Error(ErrorCode::kDuplicateId, "scene id " + order[i]->scene_id);
    }
  }
  std::string out = manifest_header_line(manifest);
  for (const ManifestEntry* e : order) out += manifest_entry_line(*e);
  return out;
}

DatasetManifest read_manifest(std::string_view bytes, bool tolerate_truncation) {
  DatasetManifest m;
  std::set<std::string, std::less<>> seen;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t nl = bytes.find('\n', pos);
    const bool last = nl == std::string_view::npos;
    if (last) nl = bytes.size();
    const std::string_view line = bytes.substr(pos, nl - pos);
    const std::size_t line_start = pos;
    pos = nl + 1;
    if (line.empty()) continue;

    json j;
    try {
      j = json::parse(line.begin(), line.end());
      if (!have_header) {
        if (j.at("schema").get<std::string>() != kManifestSchema) {
          throw Error(ErrorCode::kFormat, "unsupported manifest schema");
        }
        m.tool_version = j.at("tool_version").get<std::string>();
        m.config_fingerprint = j.at("config_fingerprint").get<std::string>();
        have_header = true;
        continue;
      }
      ManifestEntry e = entry_from_json(j);
      if (!seen.insert(e.scene_id).second) {
        throw Error(ErrorCode::kDuplicateId, "scene id " + e.scene_id);
      }
      m.scenes.push_back(std::move(e));
    } catch (const json::parse_error& e) {
      // An interrupted append leaves an unterminated final line.
      if (tolerate_truncation && last) break;
      throw ParseError(e.what(), line_start + e.byte);
    } catch (const json::exception& e) {
      if (tolerate_truncation && last) break;
      throw Error(ErrorCode::kFormat, std::string("manifest line: ") + e.what());
    }
  }
  if (!have_header) throw Error(ErrorCode::kFormat, "manifest has no header line");
  return m;
}

}  // namespace lift3d
