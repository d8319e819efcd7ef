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

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "lift3d/binary_io.h"
#include "lift3d/error.h"
#include "lift3d/output/output.h"

namespace lift3d {
namespace {

enum class PlyType { kInt8, kUint8, kInt16, kUint16, kInt32, kUint32, kFloat32, kFloat64 };

PlyType parse_type(const std::string& name) {
  static const std::map<std::string, PlyType> kTypes = {
      {"char", PlyType::kInt8},     {"int8", PlyType::kInt8},
      {"uchar", PlyType::kUint8},   {"uint8", PlyType::kUint8},
      {"short", PlyType::kInt16},   {"int16", PlyType::kInt16},
      {"ushort", PlyType::kUint16}, {"uint16", PlyType::kUint16},
      {"int", PlyType::kInt32},     {"int32", PlyType::kInt32},
      {"uint", PlyType::kUint32},   {"uint32", PlyType::kUint32},
      {"float", PlyType::kFloat32}, {"float32", PlyType::kFloat32},
      {"double", PlyType::kFloat64}, {"float64", PlyType::kFloat64},
  };
  auto it = kTypes.find(name);
  if (it == kTypes.end()) throw Error(ErrorCode::kFormat, "unknown PLY type " + name);
  return it->second;
}

double read_scalar(ByteReader& r, PlyType t) {
  switch (t) {
    case PlyType::kInt8: return r.read<std::int8_t>();
    case PlyType::kUint8: return r.read<std::uint8_t>();
    case PlyType::kInt16: return r.read<std::int16_t>();
    case PlyType::kUint16: return r.read<std::uint16_t>();
    case PlyType::kInt32: return r.read<std::int32_t>();
    case PlyType::kUint32: return r.read<std::uint32_t>();
    case PlyType::kFloat32: return r.read<float>();
    case PlyType::kFloat64: return r.read<double>();
  }
  return 0.0;
}

struct PlyProperty {
  std::string name;
  PlyType type;
  bool is_list = false;
  PlyType count_type = PlyType::kUint8;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

}  // namespace

std::string write_point_cloud(const LiftedScene& scene) {
  LIFT3D_CHECK(!scene.empty(), "refusing to write an empty point cloud");
  LIFT3D_CHECK(scene.consistent(), "per-point arrays differ in length");

  std::ostringstream header;
  header << "ply\n"
         << "format binary_little_endian 1.0\n"
         << "comment lift3d " << kToolVersion << "\n"
         << "comment scene_id " << scene.scene_id << "\n"
         << "comment source_size " << scene.width << " " << scene.height << "\n"
         << "element vertex " << scene.size() << "\n"
         << "property float x\n"
         << "property float y\n"
         << "property float z\n"
         << "property uchar red\n"
         << "property uchar green\n"
         << "property uchar blue\n"
         << "property int instance_id\n"
         << "property int semantic_id\n"
         << "end_header\n";

  ByteWriter w;
  const std::string h = header.str();
  w.reserve(h.size() + scene.size() * 23);
  w.write_bytes(h);
  for (std::size_t i = 0; i < scene.size(); ++i) {
    const Eigen::Vector3d& p = scene.points[i];
    w.write<float>(static_cast<float>(p.x()));
    w.write<float>(static_cast<float>(p.y()));
    w.write<float>(static_cast<float>(p.z()));
    for (std::uint8_t c : scene.colors[i]) w.write<std::uint8_t>(c);
    w.write<std::int32_t>(scene.instance_labels[i]);
    w.write<std::int32_t>(scene.semantic_labels[i]);
  }
  return w.take();
}

LiftedScene read_point_cloud(std::string_view bytes) {
  const std::size_t end = bytes.find("end_header\n");
  if (bytes.substr(0, 4) != "ply\n" || end == std::string_view::npos) {
    throw ParseError("not a PLY file", 0);
  }
  const std::size_t body = end + std::string_view("end_header\n").size();

  LiftedScene scene;
  std::vector<PlyElement> elements;
  bool binary_le = false;
  std::istringstream lines(std::string(bytes.substr(0, end)));
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream tok(line);
    std::string key;
    tok >> key;
    if (key == "format") {
      std::string fmt;
      tok >> fmt;
      binary_le = fmt == "binary_little_endian";
    } else if (key == "comment") {
      std::string what;
      tok >> what;
      if (what == "scene_id") {
        std::getline(tok >> std::ws, scene.scene_id);
      } else if (what == "source_size") {
        tok >> scene.width >> scene.height;
      }
    } else if (key == "element") {
      PlyElement e;
      tok >> e.name >> e.count;
      if (!tok) throw ParseError("malformed element line", 0);
      elements.push_back(std::move(e));
    } else if (key == "property") {
      if (elements.empty()) throw ParseError("property before element", 0);
      PlyProperty p;
      std::string type;
      tok >> type;
      if (type == "list") {
        std::string count_type, item_type;
        tok >> count_type >> item_type >> p.name;
        p.is_list = true;
        p.count_type = parse_type(count_type);
        p.type = parse_type(item_type);
      } else {
        p.type = parse_type(type);
        tok >> p.name;
      }
      elements.back().properties.push_back(std::move(p));
    }
  }
  if (!binary_le) throw Error(ErrorCode::kFormat, "only binary_little_endian PLY is supported");

  ByteReader r(bytes.substr(body));
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (const PlyElement& e : elements) {
    const bool is_vertex = e.name == "vertex";
    auto slot = [&](const char* name) -> int {
      for (std::size_t k = 0; k < e.properties.size(); ++k) {
        if (!e.properties[k].is_list && e.properties[k].name == name) {
          return static_cast<int>(k);
        }
      }
      return -1;
    };
    const int ix = slot("x"), iy = slot("y"), iz = slot("z");
    const int ir = slot("red"), ig = slot("green"), ib = slot("blue");
    const int iinst = slot("instance_id"), isem = slot("semantic_id");
    if (is_vertex) {
      if (ix < 0 || iy < 0 || iz < 0) {
        throw Error(ErrorCode::kFormat, "vertex element lacks x/y/z");
      }
      scene.reserve(e.count);
    }
    std::vector<double> values(e.properties.size(), 0.0);
    for (std::size_t n = 0; n < e.count; ++n) {
      for (std::size_t k = 0; k < e.properties.size(); ++k) {
        const PlyProperty& p = e.properties[k];
        if (p.is_list) {
          const auto len = static_cast<std::size_t>(read_scalar(r, p.count_type));
          for (std::size_t j = 0; j < len; ++j) read_scalar(r, p.type);
          continue;
        }
        values[k] = read_scalar(r, p.type);
      }
      if (!is_vertex) continue;
      auto get = [&](int k, double fallback) { return k < 0 ? fallback : values[k]; };
      scene.push_back({values[ix], values[iy], values[iz]},
                      {static_cast<std::uint8_t>(get(ir, 0)),
                       static_cast<std::uint8_t>(get(ig, 0)),
                       static_cast<std::uint8_t>(get(ib, 0))},
                      {nan, nan});
      scene.instance_labels.back() = static_cast<std::int32_t>(get(iinst, kUnlabeled));
      scene.semantic_labels.back() = static_cast<std::int32_t>(get(isem, kUnlabeled));
    }
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kFormat, "trailing bytes after PLY payload");
  }
  return scene;
}

}  // namespace lift3d
