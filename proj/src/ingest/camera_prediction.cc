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

#include "lift3d/ingest/camera_prediction.h"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "lift3d/error.h"
#include "lift3d/file_util.h"

namespace lift3d {
namespace {

using json = nlohmann::json;

double require_number(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw Error(ErrorCode::kFormat,
                std::string("camera prediction needs numeric '") + key + "'");
  }
  return it->get<double>();
}

}  // namespace

void validate(const IntrinsicsPrediction& pred) {
  LIFT3D_CHECK(std::isfinite(pred.fx) && pred.fx > 0.0 &&
                   std::isfinite(pred.fy) && pred.fy > 0.0,
               "focal lengths must be finite and positive");
  LIFT3D_CHECK(pred.width > 0 && pred.height > 0,
               "image dimensions must be positive");
  LIFT3D_CHECK(pred.cx >= 0.0 && pred.cx <= pred.width && pred.cy >= 0.0 &&
                   pred.cy <= pred.height,
               "principal point must lie inside the image");
}

Eigen::Vector3d sanitize_up_vector(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (!std::isfinite(n) || n == 0.0) {
    return Eigen::Vector3d::Constant(std::numeric_limits<double>::quiet_NaN());
  }
  return v / n;
}

CameraPrediction parse_camera_prediction(std::string_view json_bytes,
                                         const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_bytes.begin(), json_bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!root.is_object()) throw ParseError("camera prediction must be an object", 0);

  CameraPrediction pred;
  IntrinsicsPrediction& k = pred.intrinsics;
  k.fx = require_number(root, "fx");
  k.fy = require_number(root, "fy");
  k.cx = require_number(root, "cx");
  k.cy = require_number(root, "cy");
  k.width = static_cast<int>(require_number(root, "width"));
  k.height = static_cast<int>(require_number(root, "height"));

  GravityPrediction& g = pred.gravity;
  if (auto it = root.find("up"); it != root.end()) {
    if (!it->is_array() || it->size() != 3) {
      throw Error(ErrorCode::kFormat, "'up' must be a 3-vector");
    }
    Eigen::Vector3d up;
    for (int i = 0; i < 3; ++i) {
      up[i] = (*it)[i].is_number() ? (*it)[i].get<double>()
                                   : std::numeric_limits<double>::quiet_NaN();
    }
    g.up = sanitize_up_vector(up);
  }
  if (auto it = root.find("up_field"); it != root.end()) {
    if (!it->is_string()) throw Error(ErrorCode::kFormat, "'up_field' must be a path");
    UpField field = load_up_field(read_file(base_dir / it->get<std::string>()));
    for (Eigen::Vector3d& v : field.vectors) v = sanitize_up_vector(v);
    g.field = std::move(field);
  }
  if (!g.up && !g.field) {
    throw Error(ErrorCode::kFormat, "camera prediction has neither 'up' nor 'up_field'");
  }
  if (auto it = root.find("latitude"); it != root.end()) {
    if (it->is_number()) {
      g.latitude.push_back(it->get<double>());
    } else if (it->is_array()) {
      for (const json& v : *it) {
        g.latitude.push_back(v.is_number() ? v.get<double>()
                                           : std::numeric_limits<double>::quiet_NaN());
      }
    }
  }
  return pred;
}

}  // namespace lift3d
