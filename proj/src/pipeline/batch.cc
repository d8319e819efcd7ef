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

#include "lift3d/pipeline/batch.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "lift3d/error.h"
#include "lift3d/file_util.h"

namespace lift3d {
namespace fs = std::filesystem;
namespace {

// Appends manifest lines strictly in slot order, whatever order slots finish.
class OrderedCommitter {
 public:
  OrderedCommitter(std::ofstream& out, std::size_t slots) : out_(out), slots_(slots) {}

  void complete(std::size_t slot, ManifestEntry entry) {
    std::lock_guard<std::mutex> lock(mu_);
    slots_[slot] = std::move(entry);
    while (next_ < slots_.size() && slots_[next_]) {
      out_ << manifest_entry_line(*slots_[next_]);
      out_.flush();
      ++next_;
    }
  }

  std::vector<ManifestEntry> take() {
    std::vector<ManifestEntry> out;
    for (auto& s : slots_) {
      if (s) out.push_back(std::move(*s));
    }
    return out;
  }

 private:
  std::ofstream& out_;
  std::mutex mu_;
  std::vector<std::optional<ManifestEntry>> slots_;
  std::size_t next_ = 0;
};

ManifestEntry rejected(const std::string& id, const CocoImage& image, const Rejection& r) {
  ManifestEntry e;
  e.scene_id = id;
  e.image_id = image.id;
  e.status = SceneStatus::kRejected;
  e.reason = reject_reason_name(r.reason);
  e.detail = r.detail;
  return e;
}

}  // namespace

fs::path manifest_path(const PipelineConfig& config) {
  return config.output_root / kManifestFileName;
}

ManifestEntry process_scene(const PipelineConfig& config, const CocoDocument& doc,
                            const std::string& scene_id, const CocoImage& image) {
  try {
    auto loaded = load_scene_inputs(config, doc, scene_id, image);
    if (auto* r = std::get_if<Rejection>(&loaded)) return rejected(scene_id, image, *r);
    SceneOutcome outcome = lift_scene(std::get<SceneInputs>(loaded), config.filter);
    if (auto* r = std::get_if<Rejection>(&outcome)) return rejected(scene_id, image, *r);
    const LiftedSceneResult& res = std::get<LiftedSceneResult>(outcome);

    ManifestEntry e;
    e.scene_id = scene_id;
    e.image_id = image.id;
    e.status = SceneStatus::kOk;
    e.point_cloud_path = std::string(kScenesDirName) + "/" + scene_id + ".ply";
    e.annotations_path = std::string(kScenesDirName) + "/" + scene_id + ".annotations.json";
    e.point_count = res.scene.size();
    e.instance_count = res.annotations.instances.size();
    try {
      write_file_atomic(config.output_root / e.point_cloud_path, write_point_cloud(res.scene));
      write_file_atomic(config.output_root / e.annotations_path,
                        write_annotations(res.annotations, &res.provenance));
    } catch (const Error& err) {
      return rejected(scene_id, image, {RejectReason::kWriteFailed, err.what()});
    }
    return e;
  } catch (const std::exception& err) {
    return rejected(scene_id, image, {RejectReason::kInternal, err.what()});
  }
}

BatchResult run_batch(const PipelineConfig& config, const BatchOptions& options) {
  validate_config(config);
  std::error_code ec;
  fs::create_directories(config.output_root / kScenesDirName, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create output root " + config.output_root.string());
  }

  const CocoDocument doc = CocoDocument::parse(read_file(config.annotations));
  std::vector<std::pair<std::string, CocoImage>> scenes = scene_ids_for(doc);
  std::sort(scenes.begin(), scenes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  BatchResult result;
  DatasetManifest& manifest = result.manifest;
  manifest.config_fingerprint = config_fingerprint(config);
  const fs::path mpath = manifest_path(config);

  std::vector<ManifestEntry> previous;
  if (options.resume && fs::exists(mpath)) {
    DatasetManifest old = read_manifest(read_file(mpath), /*tolerate_truncation=*/true);
    if (old.config_fingerprint != manifest.config_fingerprint) {
      throw Error(ErrorCode::kConfig,
                  "existing manifest was produced with a different configuration");
    }
    previous = std::move(old.scenes);
  }

  std::vector<std::pair<std::string, CocoImage>> todo;
  for (auto& s : scenes) {
    const bool done = std::any_of(previous.begin(), previous.end(),
                                  [&](const ManifestEntry& e) { return e.scene_id == s.first; });
    if (done) {
      ++result.skipped;
    } else {
      todo.push_back(std::move(s));
    }
  }

  // Rewrite the surviving prefix, then append new scenes as they finish.
  {
    DatasetManifest prefix = manifest;
    prefix.scenes = previous;
    write_file_atomic(mpath, write_manifest(prefix));
  }
  std::ofstream out(mpath, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorCode::kIo, "cannot append to " + mpath.string());

  OrderedCommitter committer(out, todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) {
      ManifestEntry e = process_scene(config, doc, todo[i].first, todo[i].second);
      if (options.log && e.status == SceneStatus::kRejected) {
        options.log(e.scene_id + ": rejected (" + e.reason + ") " + e.detail);
      }
      committer.complete(i, std::move(e));
    }
  };
  const int n_threads =
      static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(config.workers),
                                             std::max<std::size_t>(todo.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  out.close();
  result.processed = todo.size();

  manifest.scenes = std::move(previous);
  for (ManifestEntry& e : committer.take()) manifest.scenes.push_back(std::move(e));
  std::sort(manifest.scenes.begin(), manifest.scenes.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.scene_id < b.scene_id; });
  write_file_atomic(mpath, write_manifest(manifest));
  return result;
}

}  // namespace lift3d
