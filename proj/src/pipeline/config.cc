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

#include "lift3d/pipeline/config.h"

#include <cstdio>

#include <json.hpp>

#include "lift3d/error.h"
#include "lift3d/file_util.h"

namespace lift3d {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

fs::path resolve(const json& root, const char* key, const fs::path& base, bool required) {
  auto it = root.find(key);
  if (it == root.end()) {
    if (required) throw Error(ErrorCode::kConfig, std::string("missing '") + key + "'");
    return {};
  }
  if (!it->is_string()) throw Error(ErrorCode::kConfig, std::string("'") + key + "' must be a path");
  fs::path p(it->get<std::string>());
  return p.is_absolute() ? p : base / p;
}

json inputs_json(const PipelineConfig& c) {
  json j;
  j["images_root"] = c.images_root.string();
  j["relative_depth_root"] = c.relative_depth_root.string();
  j["metric_depth_root"] = c.metric_depth_root.string();
  j["camera_root"] = c.camera_root.string();
  j["annotations"] = c.annotations.string();
  return j;
}

json filter_json(const FilterPolicy& f) {
  return {{"edge_margin_px", f.edge_margin_px},
          {"outlier_k", f.outlier_k},
          {"outlier_enabled", f.outlier_enabled},
          {"min_valid_points", f.min_valid_points}};
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

PipelineConfig parse_config(std::string_view json_bytes, const fs::path& base_dir) {
  json root;
  try {
    root = json::parse(json_bytes.begin(), json_bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!root.is_object()) throw Error(ErrorCode::kConfig, "config root must be an object");

  PipelineConfig c;
  try {
    c.images_root = resolve(root, "images_root", base_dir, true);
    c.relative_depth_root = resolve(root, "relative_depth_root", base_dir, true);
    c.metric_depth_root = resolve(root, "metric_depth_root", base_dir, true);
    c.camera_root = resolve(root, "camera_root", base_dir, true);
    c.annotations = resolve(root, "annotations", base_dir, true);
    c.output_root = resolve(root, "output_root", base_dir, true);
    if (auto f = root.find("filter"); f != root.end()) {
      c.filter.edge_margin_px = f->value("edge_margin_px", c.filter.edge_margin_px);
      c.filter.outlier_k = f->value("outlier_k", c.filter.outlier_k);
      c.filter.outlier_enabled = f->value("outlier_enabled", c.filter.outlier_enabled);
      c.filter.min_valid_points = f->value("min_valid_points", c.filter.min_valid_points);
    }
    if (auto r = root.find("resample"); r != root.end()) {
      const std::string mode = r->is_string() ? r->get<std::string>()
                                              : r->value("mode", std::string("nearest"));
      if (mode != "nearest") throw Error(ErrorCode::kConfig, "unsupported resample mode " + mode);
    }
    c.workers = root.value("workers", c.workers);
    if (auto r = root.find("review"); r != root.end()) {
      c.review_n = r->value("n", c.review_n);
      c.review_seed = r->value("seed", c.review_seed);
    }
  } catch (const json::type_error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  if (c.filter.edge_margin_px < 0 || !(c.filter.outlier_k >= 0.0)) {
    throw Error(ErrorCode::kConfig, "filter values must be non-negative");
  }
  if (c.workers < 1) throw Error(ErrorCode::kConfig, "workers must be >= 1");
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  return parse_config(read_file(path), fs::absolute(path).parent_path());
}

std::string config_to_json(const PipelineConfig& c) {
  json j = inputs_json(c);
  j["output_root"] = c.output_root.string();
  j["filter"] = filter_json(c.filter);
  j["resample"] = "nearest";
  j["workers"] = c.workers;
  j["review"] = {{"n", c.review_n}, {"seed", c.review_seed}};
  return j.dump(2) + "\n";
}

void validate_config(const PipelineConfig& c) {
  for (const auto& [name, p] :
       {std::pair{"images_root", c.images_root},
        std::pair{"relative_depth_root", c.relative_depth_root},
        std::pair{"metric_depth_root", c.metric_depth_root},
        std::pair{"camera_root", c.camera_root}}) {
    if (!fs::is_directory(p)) {
      throw Error(ErrorCode::kConfig, std::string(name) + " does not exist: " + p.string());
    }
  }
  if (!fs::is_regular_file(c.annotations)) {
    throw Error(ErrorCode::kConfig, "annotations file does not exist: " + c.annotations.string());
  }
  if (c.workers < 1) throw Error(ErrorCode::kConfig, "workers must be >= 1");
}

std::string config_fingerprint(const PipelineConfig& c) {
  json j = inputs_json(c);
  j["filter"] = filter_json(c.filter);
  j["resample"] = "nearest";
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(j.dump())));
  return buf;
}

}  // namespace lift3d
