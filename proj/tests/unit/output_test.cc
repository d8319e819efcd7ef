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

#include <doctest.h>

#include <cmath>
#include <random>

#include <json.hpp>

#include "lift3d/error.h"
#include "lift3d/output/output.h"

using namespace lift3d;

namespace {

LiftedScene random_scene(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> c(-100.0, 100.0);
  LiftedScene s;
  s.scene_id = "r";
  for (std::size_t i = 0; i < n; ++i) {
    s.push_back(Eigen::Vector3d(c(rng), c(rng), c(rng)),
                Rgb{static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                    static_cast<std::uint8_t>(rng())},
                PixelCoord::center_of(static_cast<int>(i), 0));
    s.instance_labels[i] = static_cast<std::int32_t>(rng() % 5) - 1;
    s.semantic_labels[i] = static_cast<std::int32_t>(rng() % 7) - 1;
  }
  return s;
}

SceneAnnotations3D random_annotations(std::mt19937_64& rng, std::size_t points) {
  std::uniform_real_distribution<double> c(-10.0, 10.0);
  std::uniform_real_distribution<double> e(0.0, 3.0);
  SceneAnnotations3D a;
  a.scene_id = "scene_" + std::to_string(rng() % 1000);
  a.image_id = static_cast<std::int64_t>(rng() % 100000);
  const std::size_t n = 1 + rng() % 4;
  for (std::size_t i = 0; i < n; ++i) {
    Instance3D inst;
    inst.instance_id = static_cast<std::int32_t>(i);
    inst.source_annotation_id = static_cast<std::int64_t>(rng() % 1000000);
    inst.category_id = static_cast<std::int64_t>(rng() % 80);
    inst.category_name = "cat \"" + std::to_string(inst.category_id) + "\"";
    for (std::uint32_t p = 0; p < points; ++p) {
      if (rng() % 3 == 0) inst.point_indices.push_back(p);
    }
    if (rng() % 4 != 0) {
      Box3D b;
      b.center = Eigen::Vector3d(c(rng), c(rng), c(rng));
      b.extents = Eigen::Vector3d(e(rng), e(rng), e(rng));
      b.instance_id = inst.instance_id;
      b.category_id = inst.category_id;
      inst.box = b;
    }
    a.instances.push_back(std::move(inst));
  }
  return a;
}

bool same_annotations(const SceneAnnotations3D& a, const SceneAnnotations3D& b) {
  if (a.scene_id != b.scene_id || a.image_id != b.image_id) return false;
  if (a.instances.size() != b.instances.size()) return false;
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    const Instance3D& x = a.instances[i];
    const Instance3D& y = b.instances[i];
    if (x.instance_id != y.instance_id || x.source_annotation_id != y.source_annotation_id ||
        x.category_id != y.category_id || x.category_name != y.category_name ||
        x.point_indices != y.point_indices || x.box.has_value() != y.box.has_value()) {
      return false;
    }
    if (x.box && (x.box->center != y.box->center || x.box->extents != y.box->extents ||
                  x.box->instance_id != y.box->instance_id ||
                  x.box->category_id != y.box->category_id)) {
      return false;
    }
  }
  return true;
}

ManifestEntry ok_entry(const std::string& id, std::size_t points = 10) {
  ManifestEntry e;
  e.scene_id = id;
  e.image_id = 3;
  e.point_cloud_path = "scenes/" + id + ".ply";
  e.annotations_path = "scenes/" + id + ".annotations.json";
  e.point_count = points;
  e.instance_count = 1;
  return e;
}

ManifestEntry rejected_entry(const std::string& id) {
  ManifestEntry e;
  e.scene_id = id;
  e.status = SceneStatus::kRejected;
  e.reason = "NoValidObjects";
  e.detail = "all instances fell on invalid pixels";
  return e;
}

}  // namespace

TEST_CASE("single white unlabeled point") {
  LiftedScene s;
  s.push_back(Eigen::Vector3d(1, 2, 3), Rgb{255, 255, 255}, PixelCoord{0.5, 0.5});
  const std::string bytes = write_point_cloud(s);
  CHECK(bytes.rfind("ply\nformat binary_little_endian 1.0\n", 0) == 0);
  CHECK(bytes.find("element vertex 1\n") != std::string::npos);
  const LiftedScene back = read_point_cloud(bytes);
  REQUIRE(back.size() == 1);
  CHECK(back.points[0] == Eigen::Vector3d(1, 2, 3));
  CHECK(back.colors[0] == Rgb{255, 255, 255});
  CHECK(back.instance_labels[0] == -1);
  CHECK(back.semantic_labels[0] == -1);
  CHECK(std::isnan(back.pixel_refs[0].u));
}

TEST_CASE("empty point cloud is refused") {
  CHECK_THROWS_AS(write_point_cloud(LiftedScene{}), Error);
}

TEST_CASE("point cloud round trip within float32 quantization") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const LiftedScene s = random_scene(rng, 1 + rng() % 500);
    const std::string bytes = write_point_cloud(s);
    CHECK(bytes.find("element vertex " + std::to_string(s.size()) + "\n") != std::string::npos);
    const LiftedScene back = read_point_cloud(bytes);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (int a = 0; a < 3; ++a) {
        CHECK(std::abs(back.points[i][a] - s.points[i][a]) <=
              1.2e-7 * std::abs(s.points[i][a]));
      }
    }
    CHECK(back.colors == s.colors);
    CHECK(back.instance_labels == s.instance_labels);
    CHECK(back.semantic_labels == s.semantic_labels);
    CHECK(write_point_cloud(back) == bytes);
  }
}

TEST_CASE("ply reader accepts extra properties and rejects bad files") {
  std::string ply =
      "ply\nformat binary_little_endian 1.0\ncomment hi\nelement vertex 1\n"
      "property double x\nproperty double y\nproperty double z\nproperty float nx\n"
      "end_header\n";
  const double xyz[3] = {0.25, -1.5, 8.0};
  ply.append(reinterpret_cast<const char*>(xyz), sizeof(xyz));
  const float nx = 1.0f;
  ply.append(reinterpret_cast<const char*>(&nx), sizeof(nx));
  const LiftedScene s = read_point_cloud(ply);
  REQUIRE(s.size() == 1);
  CHECK(s.points[0] == Eigen::Vector3d(0.25, -1.5, 8.0));
  CHECK(s.instance_labels[0] == kUnlabeled);

  CHECK_THROWS_AS(read_point_cloud(ply + "x"), Error);
  CHECK_THROWS_AS(read_point_cloud(ply.substr(0, ply.size() - 2)), Error);
  CHECK_THROWS_AS(read_point_cloud("hello"), ParseError);
  CHECK_THROWS_AS(read_point_cloud("ply\nformat ascii 1.0\nelement vertex 0\nend_header\n"),
                  Error);
}

TEST_CASE("annotation document round trip") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const SceneAnnotations3D a = random_annotations(rng, 300);
    const std::string bytes = write_annotations(a);
    const AnnotationDocument doc = read_annotations(bytes);
    CHECK(same_annotations(a, doc.annotations));
    CHECK_FALSE(doc.provenance);
    CHECK(write_annotations(doc.annotations) == bytes);
  }
}

TEST_CASE("annotation boxes are six finite numbers") {
  std::mt19937_64 rng(3);
  SceneAnnotations3D a = random_annotations(rng, 10);
  Box3D b;
  b.center = Eigen::Vector3d(1, 2, 3);
  b.extents = Eigen::Vector3d(0.5, 0.25, 2);
  a.instances[0].box = b;
  const auto j = nlohmann::json::parse(write_annotations(a));
  CHECK(j["schema"] == "lift3d.annotations/1");
  const auto& box = j["instances"][0]["box"];
  CHECK(box["center"] == nlohmann::json::array({1.0, 2.0, 3.0}));
  CHECK(box["extents"] == nlohmann::json::array({0.5, 0.25, 2.0}));
  a.instances[0].box->center.x() = std::nan("");
  CHECK_THROWS_AS(write_annotations(a), Error);
}

TEST_CASE("zero-instance annotations are refused") {
  SceneAnnotations3D a;
  a.scene_id = "x";
  CHECK_THROWS_AS(write_annotations(a), Error);
}

TEST_CASE("point indices are stored as ranges") {
  SceneAnnotations3D a;
  a.scene_id = "x";
  Instance3D inst;
  inst.point_indices = {0, 1, 2, 3, 7, 9, 10};
  a.instances.push_back(inst);
  const auto j = nlohmann::json::parse(write_annotations(a));
  CHECK(j["instances"][0]["point_ranges"] ==
        nlohmann::json::parse("[[0,4],[7,8],[9,11]]"));
  CHECK(j["instances"][0]["point_count"] == 7);
}

TEST_CASE("annotation provenance survives a round trip") {
  SceneAnnotations3D a;
  a.scene_id = "x";
  a.instances.emplace_back();
  SceneProvenance p;
  p.scale = 2.5;
  p.valid_count = 77;
  p.mean_metric = 5.0;
  p.mean_relative = 2.0;
  p.pixel_status_counts = {{"Ok", 77}, {"EdgeMargin", 23}};
  p.intrinsics = Intrinsics{100, 101, 50, 40};
  p.extrinsics.R << 1, 0, 0, 0, 0, 1, 0, -1, 0;
  p.gravity_status = "ok";
  p.up_camera = Eigen::Vector3d(0, -1, 0);
  p.latitude_samples = 4;
  p.log = {"annotation 3: dropped"};
  const AnnotationDocument doc = read_annotations(write_annotations(a, &p));
  REQUIRE(doc.provenance);
  CHECK(doc.provenance->scale == 2.5);
  CHECK(doc.provenance->valid_count == 77);
  CHECK(doc.provenance->pixel_status_counts == p.pixel_status_counts);
  CHECK(doc.provenance->intrinsics == p.intrinsics);
  CHECK(doc.provenance->extrinsics.R == p.extrinsics.R);
  CHECK(doc.provenance->up_camera == p.up_camera);
  CHECK(doc.provenance->log == p.log);
}

TEST_CASE("malformed annotation documents") {
  CHECK_THROWS_AS(read_annotations("{"), ParseError);
  CHECK_THROWS_AS(read_annotations(R"({"schema":"other/1"})"), Error);
  CHECK_THROWS_AS(read_annotations(R"({"schema":"lift3d.annotations/1"})"), Error);
  CHECK_THROWS_AS(
      read_annotations(R"({"schema":"lift3d.annotations/1","scene_id":"a","image_id":1,
        "instances":[{"instance_id":0,"source_annotation_id":1,"category_id":1,
        "category_name":"","point_count":3,"point_ranges":[[0,2]],"box":null}]})"),
      Error);
}

TEST_CASE("empty manifest is a header line") {
  DatasetManifest m;
  m.config_fingerprint = "abc";
  const std::string bytes = write_manifest(m);
  CHECK(std::count(bytes.begin(), bytes.end(), '\n') == 1);
  CHECK(bytes == manifest_header_line(m));
  CHECK(read_manifest(bytes) == m);
}

TEST_CASE("manifest round trip sorts by scene id") {
  DatasetManifest m;
  m.config_fingerprint = "f00d";
  m.scenes = {ok_entry("c"), rejected_entry("a"), ok_entry("b", 99)};
  const std::string bytes = write_manifest(m);
  const DatasetManifest back = read_manifest(bytes);
  REQUIRE(back.scenes.size() == 3);
  CHECK(back.scenes[0].scene_id == "a");
  CHECK(back.scenes[1] == m.scenes[2]);
  CHECK(back.scenes[2] == m.scenes[0]);
  CHECK(back.scenes[0] == m.scenes[1]);
  CHECK(back.ok_count() == 2);
  CHECK(back.rejected_count() == 1);
  CHECK(back.find("b")->point_count == 99);
  CHECK(back.find("zz") == nullptr);
  CHECK(write_manifest(back) == bytes);
}

TEST_CASE("duplicate scene ids") {
  DatasetManifest m;
  m.scenes = {ok_entry("a"), rejected_entry("a")};
  try {
    write_manifest(m);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDuplicateId);
  }
  const std::string bytes = manifest_header_line(m) + manifest_entry_line(ok_entry("a")) +
                            manifest_entry_line(ok_entry("a"));
  CHECK_THROWS_AS(read_manifest(bytes), Error);
}

TEST_CASE("truncated final manifest line") {
  DatasetManifest m;
  m.scenes = {ok_entry("a"), ok_entry("b")};
  const std::string full = write_manifest(m);
  const std::string cut = full.substr(0, full.size() - 10);
  CHECK_THROWS_AS(read_manifest(cut), ParseError);
  const DatasetManifest lenient = read_manifest(cut, true);
  REQUIRE(lenient.scenes.size() == 1);
  CHECK(lenient.scenes[0] == m.scenes[0]);
  // Damage before the last line is never tolerated.
  const std::string mid = manifest_header_line(m) + "{\"scene\n" + manifest_entry_line(ok_entry("b"));
  CHECK_THROWS_AS(read_manifest(mid, true), Error);
  CHECK_THROWS_AS(read_manifest("", true), Error);
}

TEST_CASE("writers are deterministic") {
  std::mt19937_64 a(9);
  std::mt19937_64 b(9);
  const LiftedScene s1 = random_scene(a, 100);
  const LiftedScene s2 = random_scene(b, 100);
  CHECK(write_point_cloud(s1) == write_point_cloud(s2));
  const SceneAnnotations3D x = random_annotations(a, 100);
  const SceneAnnotations3D y = random_annotations(b, 100);
  CHECK(write_annotations(x) == write_annotations(y));
}
