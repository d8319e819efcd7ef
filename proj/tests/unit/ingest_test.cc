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

#include "lift3d/error.h"
#include "lift3d/file_util.h"
#include "lift3d/ingest/camera_prediction.h"
#include "lift3d/ingest/coco.h"
#include "lift3d/ingest/mask.h"
#include "lift3d/ingest/raster.h"
#include "test_util.h"

using namespace lift3d;

namespace {

// Column-major, zeros first.
BitMask naive_decode(const std::vector<std::uint32_t>& counts, int w, int h) {
  BitMask m(w, h);
  std::size_t k = 0;
  bool value = false;
  for (std::uint32_t run : counts) {
    for (std::uint32_t i = 0; i < run; ++i, ++k) {
      const int x = static_cast<int>(k / h);
      const int y = static_cast<int>(k % h);
      m.set(x, y, value);
    }
    value = !value;
  }
  return m;
}

std::vector<std::uint32_t> naive_encode(const BitMask& m) {
  std::vector<std::uint32_t> counts;
  bool value = false;
  std::uint32_t run = 0;
  for (int x = 0; x < m.width; ++x) {
    for (int y = 0; y < m.height; ++y) {
      if (m.at(x, y) != value) {
        counts.push_back(run);
        run = 0;
        value = !value;
      }
      ++run;
    }
  }
  counts.push_back(run);
  return counts;
}

BitMask random_mask(std::mt19937_64& rng, int w, int h) {
  std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.05, 0.95)(rng));
  BitMask m(w, h);
  for (auto& b : m.bits) b = coin(rng) ? 1 : 0;
  return m;
}

bool crossing_inside(const Polygon& p, double px, double py) {
  bool inside = false;
  const std::size_t n = p.size() / 2;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const double xi = p[2 * i], yi = p[2 * i + 1];
    const double xj = p[2 * j], yj = p[2 * j + 1];
    if ((yi > py) != (yj > py) && px < (xj - xi) * (py - yi) / (yj - yi) + xi) {
      inside = !inside;
    }
  }
  return inside;
}

BitMask oracle_raster(const PolygonSet& polys, int w, int h) {
  BitMask m(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool inside = false;
      for (const Polygon& p : polys) {
        if (p.size() >= 6 && crossing_inside(p, x + 0.5, y + 0.5)) inside = !inside;
      }
      m.set(x, y, inside);
    }
  }
  return m;
}

std::string coco_doc(const std::string& annotations) {
  return R"({"images":[{"id":7,"file_name":"a.png","width":8,"height":8}],
             "categories":[{"id":1,"name":"thing"}],
             "annotations":[)" + annotations + "]}";
}

}  // namespace

TEST_CASE("rle decode of trivial masks") {
  CHECK(decode_rle_mask({30}, 6, 5) == BitMask(6, 5, false));
  CHECK(decode_rle_mask({0, 30}, 6, 5) == BitMask(6, 5, true));
  CHECK(decode_rle_mask({}, 0, 0).bits.empty());
}

TEST_CASE("rle decode rejects wrong run sums") {
  try {
    decode_rle_mask({29}, 6, 5);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMalformedRle);
  }
  CHECK_THROWS_AS(decode_rle_mask({10, 25}, 6, 5), Error);
}

TEST_CASE("rle decode matches a per-pixel reference on small masks") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 8);
    const int h = 1 + static_cast<int>(rng() % 8);
    const BitMask m = random_mask(rng, w, h);
    const auto counts = naive_encode(m);
    REQUIRE(naive_decode(counts, w, h) == m);
    CHECK(decode_rle_mask(counts, w, h) == m);
    CHECK(encode_rle_mask(m).counts == counts);
  }
}

TEST_CASE("rle round trip on a random 6x5 mask") {
  std::mt19937_64 rng(5);
  const BitMask m = random_mask(rng, 6, 5);
  const RleMask rle = encode_rle_mask(m);
  CHECK(rle.width == 6);
  CHECK(rle.height == 5);
  CHECK(decode_rle_mask(rle) == m);
  CHECK(decode_rle_mask(rle).area() == m.area());
}

TEST_CASE("compressed rle strings round trip") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const BitMask m = random_mask(rng, 1 + rng() % 40, 1 + rng() % 40);
    const auto counts = encode_rle_mask(m).counts;
    const std::string s = rle_counts_to_string(counts);
    CHECK(rle_counts_from_string(s) == counts);
  }
  // Large runs need several continuation characters.
  const std::vector<std::uint32_t> big = {0, 1u << 20, 3, 123456789};
  CHECK(rle_counts_from_string(rle_counts_to_string(big)) == big);
  CHECK_THROWS_AS(rle_counts_from_string("\x01"), Error);
}

TEST_CASE("axis-aligned square rasterizes to area 16") {
  const BitMask m = rasterize_polygons({{0, 0, 4, 0, 4, 4, 0, 4}}, 8, 8);
  CHECK(m.area() == 16);
  CHECK(m == oracle_raster({{0, 0, 4, 0, 4, 4, 0, 4}}, 8, 8));
  const auto b = m.tight_bounds();
  CHECK(b.x == 0);
  CHECK(b.y == 0);
  CHECK(b.w == 4);
  CHECK(b.h == 4);
}

TEST_CASE("triangle area is close to half the square") {
  const PolygonSet tri = {{0, 0, 10, 0, 0, 10}};
  const BitMask m = rasterize_polygons(tri, 10, 10);
  CHECK(m == oracle_raster(tri, 10, 10));
  CHECK(m.area() >= 45);
  CHECK(m.area() <= 55);
}

TEST_CASE("empty and full polygon sets") {
  CHECK(rasterize_polygons({}, 7, 5) == BitMask(7, 5, false));
  CHECK(rasterize_polygons({{0, 0, 7, 0, 7, 5, 0, 5}}, 7, 5) == BitMask(7, 5, true));
  CHECK(rasterize_polygons({{-3, -3, 20, -3, 20, 20, -3, 20}}, 7, 5) == BitMask(7, 5, true));
}

TEST_CASE("degenerate polygons are skipped with a warning") {
  std::vector<RasterWarning> warnings;
  const BitMask m =
      rasterize_polygons({{1, 1, 3, 3}, {0, 0, 4, 0, 4, 4, 0, 4}}, 8, 8, &warnings);
  CHECK(m.area() == 16);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].polygon_index == 0);
}

TEST_CASE("overlapping polygons use even-odd fill") {
  const PolygonSet polys = {{0, 0, 6, 0, 6, 6, 0, 6}, {2, 2, 4, 2, 4, 4, 2, 4}};
  const BitMask m = rasterize_polygons(polys, 8, 8);
  CHECK(m.area() == 32);
  CHECK_FALSE(m.at(3, 3));
  CHECK(m.at(1, 1));
}

TEST_CASE("random polygons agree with a crossing-number oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(-4.0, 36.0);
  for (int trial = 0; trial < 300; ++trial) {
    PolygonSet polys(1 + rng() % 2);
    for (Polygon& p : polys) {
      const int n = 3 + static_cast<int>(rng() % 6);
      for (int i = 0; i < 2 * n; ++i) p.push_back(coord(rng));
    }
    const BitMask got = rasterize_polygons(polys, 32, 24);
    const BitMask want = oracle_raster(polys, 32, 24);
    CHECK(got == want);
  }
}

TEST_CASE("polygon rasterization is translation equivariant") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> coord(2.0, 14.0);
  for (int trial = 0; trial < 200; ++trial) {
    Polygon p;
    const int n = 3 + static_cast<int>(rng() % 5);
    for (int i = 0; i < 2 * n; ++i) p.push_back(coord(rng));
    const int dx = static_cast<int>(rng() % 9) - 4;
    const int dy = static_cast<int>(rng() % 9) - 4;
    Polygon q = p;
    for (std::size_t i = 0; i < q.size(); i += 2) {
      q[i] += dx;
      q[i + 1] += dy;
    }
    const BitMask a = rasterize_polygons({p}, 24, 24);
    const BitMask b = rasterize_polygons({q}, 24, 24);
    for (int y = 0; y < 24; ++y) {
      for (int x = 0; x < 24; ++x) {
        const int sx = x - dx;
        const int sy = y - dy;
        if (sx < 0 || sy < 0 || sx >= 24 || sy >= 24) continue;
        CHECK(b.at(x, y) == a.at(sx, sy));
      }
    }
  }
}

TEST_CASE("coco document with no instances for the image") {
  const AnnotationSet2D set = parse_coco_annotations(coco_doc(""), 7);
  CHECK(set.instances.empty());
  CHECK(set.width == 8);
  CHECK(set.height == 8);
  CHECK(set.file_name == "a.png");
  CHECK(set.category_names.at(1) == "thing");
}

TEST_CASE("coco polygon instance and bbox clamping") {
  const std::string doc = coco_doc(
      R"({"id":1,"image_id":7,"category_id":1,"segmentation":[[0,0,4,0,4,4,0,4]]},
         {"id":2,"image_id":7,"category_id":99,"bbox":[6,6,4,4],"iscrowd":1})");
  const AnnotationSet2D set = parse_coco_annotations(doc, 7);
  REQUIRE(set.instances.size() == 2);
  const auto mask = instance_mask(set.instances[0], set.width, set.height);
  REQUIRE(mask);
  CHECK(mask->area() == 16);
  CHECK(set.instances[1].category_id == 99);
  CHECK(set.instances[1].iscrowd);
  REQUIRE(set.instances[1].bbox);
  CHECK(*set.instances[1].bbox == BBox2D{6, 6, 2, 2});
  CHECK_FALSE(instance_mask(set.instances[1], 8, 8));
}

TEST_CASE("coco rle segmentations in list and string form") {
  BitMask m(8, 8);
  m.set(2, 3);
  m.set(2, 4);
  m.set(5, 0);
  const auto counts = encode_rle_mask(m).counts;
  std::string list = "[";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    list += (i ? "," : "") + std::to_string(counts[i]);
  }
  list += "]";
  const std::string doc = coco_doc(
      R"({"id":1,"image_id":7,"category_id":1,"segmentation":{"size":[8,8],"counts":)" + list +
      R"(}},{"id":2,"image_id":7,"category_id":1,"segmentation":{"size":[8,8],"counts":")" +
      rle_counts_to_string(counts) + R"("}})");
  const AnnotationSet2D set = parse_coco_annotations(doc, 7);
  REQUIRE(set.instances.size() == 2);
  CHECK(*instance_mask(set.instances[0], 8, 8) == m);
  CHECK(*instance_mask(set.instances[1], 8, 8) == m);
  CHECK_THROWS_AS(instance_mask(set.instances[0], 4, 16), Error);
}

TEST_CASE("odd but well-formed coco instances do not throw") {
  const std::string doc = coco_doc(
      R"({"image_id":7,"category_id":"x","segmentation":"nope","bbox":[1,2]},
         {"image_id":7,"segmentation":{"size":[8,8]}},
         {"image_id":7,"segmentation":[["a"]],"bbox":[-5,-5,3,3]},
         {"image_id":7,"bbox":[1,1,-2,3]},
         {"image_id":"7"},
         5,
         {"image_id":8,"bbox":[0,0,1,1]})");
  AnnotationSet2D set;
  REQUIRE_NOTHROW(set = parse_coco_annotations(doc, 7));
  REQUIRE(set.instances.size() == 2);
  CHECK(*set.instances[0].bbox == BBox2D{0, 0, 0, 0});
  CHECK(set.instances[1].bbox->w == 0);
  CHECK_FALSE(set.warnings.empty());
}

TEST_CASE("malformed coco json reports the byte offset") {
  try {
    parse_coco_annotations(R"({"images": [1, 2,)", 1);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(e.byte_offset() > 0);
    CHECK(std::string(e.what()).find("at byte") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_coco_annotations("[]", 1), ParseError);
  CHECK_THROWS_AS(parse_coco_annotations(coco_doc(""), 12), Error);
}

TEST_CASE("float32 depth raster loads identically") {
  DepthMap d(2, 2, DepthKind::kMetric);
  d.values = {1, 2, 3, 4};
  const std::string bytes = encode_depth_raster(d, RasterDtype::kFloat32);
  CHECK(bytes.size() == kRasterHeaderSize + 16);
  CHECK(bytes.substr(0, 4) == "DPTH");
  const DepthMap back = load_depth_raster(bytes, DepthKind::kRelative);
  CHECK(back.values == d.values);
  CHECK(back.kind == DepthKind::kRelative);
}

TEST_CASE("uint16 depth dequantizes with the header scale") {
  DepthMap d(1, 2, DepthKind::kMetric);
  d.values = {1.0, std::nan("")};
  const DepthMap back =
      load_depth_raster(encode_depth_raster(d, RasterDtype::kUint16, 0.001), DepthKind::kMetric);
  CHECK(back.values[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::isnan(back.values[1]));
}

TEST_CASE("non-finite samples are invalid and negatives clamp to zero") {
  DepthMap d(3, 1, DepthKind::kMetric);
  d.values = {std::nan(""), -2.0, 5.5};
  const DepthMap back = load_depth_raster(encode_depth_raster(d, RasterDtype::kFloat64), d.kind);
  CHECK(std::isnan(back.values[0]));
  CHECK(back.values[1] == 0.0);
  CHECK(back.values[2] == 5.5);
  CHECK_FALSE(is_defined_depth(back.values[0]));
  CHECK_FALSE(is_defined_depth(back.values[1]));
  CHECK(is_defined_depth(back.values[2]));
}

TEST_CASE("depth raster format errors") {
  DepthMap d(2, 2, DepthKind::kMetric, 1.0);
  std::string bytes = encode_depth_raster(d, RasterDtype::kFloat32);
  try {
    load_depth_raster(bytes.substr(0, bytes.size() - 1), DepthKind::kMetric);
    FAIL("expected a format error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFormat);
  }
  std::string bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(load_depth_raster(bad, DepthKind::kMetric), ParseError);
  CHECK_THROWS_AS(load_depth_raster("DPT", DepthKind::kMetric), Error);
  CHECK_THROWS_AS(load_depth_raster(encode_color_raster(ColorRaster(2, 2)), DepthKind::kMetric),
                  Error);
}

TEST_CASE("color raster and up field round trip") {
  ColorRaster c(3, 2);
  for (std::size_t i = 0; i < c.rgb.size(); ++i) c.rgb[i] = static_cast<std::uint8_t>(i * 13);
  const ColorRaster back = load_color_raster(encode_color_raster(c));
  CHECK(back.width == 3);
  CHECK(back.height == 2);
  CHECK(back.rgb == c.rgb);
  CHECK(encode_ppm(c).rfind("P6\n3 2\n255\n", 0) == 0);

  UpField f{2, 1, {Eigen::Vector3d(0, -1, 0), Eigen::Vector3d(0.6, -0.8, 0)}};
  const UpField g = load_up_field(encode_up_field(f));
  REQUIRE(g.vectors.size() == 2);
  CHECK((g.vectors[1] - f.vectors[1]).norm() < 1e-7);
}

TEST_CASE("camera prediction with an aggregate up vector") {
  const CameraPrediction p = parse_camera_prediction(
      R"({"fx":500,"fy":510,"cx":320,"cy":240,"width":640,"height":480,"up":[0,-2,0],
          "latitude":[0.1,0.2]})",
      ".");
  CHECK(p.intrinsics.fy == 510);
  REQUIRE(p.gravity.up);
  CHECK((*p.gravity.up - Eigen::Vector3d(0, -1, 0)).norm() < 1e-15);
  CHECK(p.gravity.latitude.size() == 2);
  CHECK_NOTHROW(validate(p.intrinsics));
}

TEST_CASE("camera prediction with an up field file") {
  const auto dir = testing::scratch_dir("ingest_up_field");
  UpField f{1, 2, {Eigen::Vector3d(0, -3, 0), Eigen::Vector3d(0, 0, 0)}};
  write_file(dir / "up.upvf", encode_up_field(f));
  const CameraPrediction p = parse_camera_prediction(
      R"({"fx":5,"fy":5,"cx":0.5,"cy":1,"width":1,"height":2,"up_field":"up.upvf"})", dir);
  REQUIRE(p.gravity.field);
  CHECK((p.gravity.field->vectors[0] - Eigen::Vector3d(0, -1, 0)).norm() < 1e-15);
  CHECK(std::isnan(p.gravity.field->vectors[1].x()));
}

TEST_CASE("camera prediction errors") {
  CHECK_THROWS_AS(parse_camera_prediction(R"({"fx":1})", "."), Error);
  CHECK_THROWS_AS(
      parse_camera_prediction(R"({"fx":1,"fy":1,"cx":0,"cy":0,"width":2,"height":2})", "."),
      Error);
  CHECK_THROWS_AS(parse_camera_prediction("{\"fx\":", "."), ParseError);
  CHECK_THROWS_AS(validate(IntrinsicsPrediction{1, 1, 5, 1, 4, 4}), Error);
  CHECK_THROWS_AS(validate(IntrinsicsPrediction{0, 1, 1, 1, 4, 4}), Error);
}
