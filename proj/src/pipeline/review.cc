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

#include "lift3d/pipeline/review.h"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <random>

#include <json.hpp>

#include "lift3d/error.h"
#include "lift3d/file_util.h"
#include "lift3d/pipeline/lift_scene.h"

namespace lift3d {
namespace fs = std::filesystem;
namespace {

constexpr std::array<std::array<int, 3>, 8> kPalette = {{
    {230, 25, 75}, {60, 180, 75}, {255, 225, 25}, {0, 130, 200},
    {245, 130, 48}, {145, 30, 180}, {70, 240, 240}, {240, 50, 230},
}};

}  // namespace

std::vector<std::string> select_review_sample(const DatasetManifest& manifest, std::size_t n,
                                              std::uint64_t seed, std::string* warning) {
  std::vector<std::string> ok;
  for (const ManifestEntry& e : manifest.scenes) {
    if (e.status == SceneStatus::kOk) ok.push_back(e.scene_id);
  }
  std::sort(ok.begin(), ok.end());
  if (n > ok.size()) {
    if (warning) {
      *warning = "review size " + std::to_string(n) + " clamped to " + std::to_string(ok.size()) +
                 " Ok scenes";
    }
    n = ok.size();
  }
  // Partial Fisher-Yates; the modulo draw keeps the sequence identical across
  // standard library implementations.
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (ok.size() - i));
    std::swap(ok[i], ok[j]);
  }
  ok.resize(n);
  return ok;
}

ColorRaster side_by_side_overlay(const ColorRaster& source, const AnnotationSet2D& annotations) {
  const int w = source.width;
  const int h = source.height;
  ColorRaster out(2 * w, h);
  ColorRaster overlay = source;
  for (std::size_t k = 0; k < annotations.instances.size(); ++k) {
    const auto mask = instance_mask(annotations.instances[k], w, h);
    if (!mask) continue;
    const auto& c = kPalette[k % kPalette.size()];
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!mask->at(x, y)) continue;
        std::uint8_t* px = &overlay.rgb[(static_cast<std::size_t>(y) * w + x) * 3];
        for (int ch = 0; ch < 3; ++ch) px[ch] = static_cast<std::uint8_t>((px[ch] + c[ch]) / 2);
      }
    }
  }
  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w * 3;
    const std::size_t out_row = static_cast<std::size_t>(y) * 2 * w * 3;
    std::copy_n(&source.rgb[row], w * 3, &out.rgb[out_row]);
    std::copy_n(&overlay.rgb[row], w * 3, &out.rgb[out_row + w * 3]);
  }
  return out;
}

ReviewBundle sample_for_review(const PipelineConfig& config, const DatasetManifest& manifest,
                               std::size_t n, std::uint64_t seed, const fs::path& review_dir) {
  ReviewBundle bundle;
  bundle.directory = review_dir;
  std::string warning;
  bundle.scene_ids = select_review_sample(manifest, n, seed, &warning);
  if (!warning.empty()) bundle.warnings.push_back(warning);

  std::error_code ec;
  fs::create_directories(review_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create review directory " + review_dir.string());

  std::optional<CocoDocument> doc;
  std::map<std::string, CocoImage> images;
  if (!bundle.scene_ids.empty()) {
    doc = CocoDocument::parse(read_file(config.annotations));
    for (auto& [id, img] : scene_ids_for(*doc)) images.emplace(id, img);
  }

  nlohmann::ordered_json scenes = nlohmann::ordered_json::array();
  for (const std::string& id : bundle.scene_ids) {
    const ManifestEntry* e = manifest.find(id);
    const fs::path dir = review_dir / id;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
    write_file_atomic(dir / "cloud.ply", read_file(config.output_root / e->point_cloud_path));
    write_file_atomic(dir / "annotations.json",
                      read_file(config.output_root / e->annotations_path));

    nlohmann::ordered_json entry = {{"scene_id", id}, {"image_id", e->image_id},
                                    {"point_cloud", id + "/cloud.ply"},
                                    {"annotations", id + "/annotations.json"}};
    auto img = images.find(id);
    const fs::path src = scene_input_paths(config, id).color;
    if (img != images.end() && fs::is_regular_file(src)) {
      const ColorRaster color = load_color_raster(read_file(src));
      const AnnotationSet2D set = doc->annotations_for(img->second.id);
      if (set.width == color.width && set.height == color.height) {
        write_file_atomic(dir / "side_by_side.ppm", encode_ppm(side_by_side_overlay(color, set)));
        entry["side_by_side"] = id + "/side_by_side.ppm";
      } else {
        bundle.warnings.push_back(id + ": source size differs from annotations; no overlay");
      }
    } else {
      bundle.warnings.push_back(id + ": source image unavailable; no overlay");
    }
    scenes.push_back(std::move(entry));
  }

  nlohmann::ordered_json root = {{"seed", seed},
                                 {"requested", n},
                                 {"sampled", bundle.scene_ids.size()},
                                 {"config_fingerprint", manifest.config_fingerprint},
                                 {"scenes", std::move(scenes)},
                                 {"warnings", bundle.warnings}};
  write_file_atomic(review_dir / "bundle.json", root.dump(2) + "\n");
  return bundle;
}

}  // namespace lift3d
