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
#include <set>

#include <json.hpp>

#include "lift3d/error.h"
#include "lift3d/file_util.h"
#include "lift3d/oracle/oracle.h"
#include "lift3d/pipeline/batch.h"
#include "lift3d/pipeline/config.h"
#include "lift3d/pipeline/dataset.h"
#include "lift3d/pipeline/lift_scene.h"
#include "lift3d/pipeline/review.h"
#include "test_util.h"

using namespace lift3d;
namespace fs = std::filesystem;

namespace {

std::vector<oracle::GroundTruth> random_truth(int n, std::uint64_t seed, int w = 48, int h = 36) {
  std::mt19937_64 rng(seed);
  std::vector<oracle::GroundTruth> out;
  for (int i = 0; i < n; ++i) {
    oracle::SyntheticSceneSpec spec = oracle::random_scene(rng, i, w, h);
    spec.alpha = std::exp(std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
    out.push_back(oracle::render_ground_truth(spec));
  }
  return out;
}

SceneInputs inputs_for(const oracle::GroundTruth& gt) {
  return oracle::to_scene_inputs(oracle::make_pipeline_inputs(gt, gt.spec.alpha));
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = read_file(e.path());
  }
  return files;
}

DepthMap grid(int w, int h, std::initializer_list<double> values) {
  DepthMap d(w, h, DepthKind::kMetric);
  d.values.assign(values);
  return d;
}

PipelineConfig fixture(const std::string& name, int scenes, std::uint64_t seed) {
  const fs::path dir = testing::scratch_dir(name);
  return oracle::write_fixture_set(random_truth(scenes, seed), dir);
}

}  // namespace

TEST_CASE("resample at the target size is the identity") {
  const DepthMap d = grid(2, 2, {1, std::nan(""), 3, 4});
  const DepthMap r = resample_nearest(d, 2, 2);
  CHECK(r.values[0] == 1);
  CHECK(std::isnan(r.values[1]));
  CHECK(r.values[3] == 4);
}

TEST_CASE("2x2 upsampled to 4x4 repeats each value in a block") {
  const DepthMap d = grid(2, 2, {1, 2, 3, 4});
  const DepthMap r = resample_nearest(d, 4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) CHECK(r.at(x, y) == d.at(x / 2, y / 2));
  CHECK(r.kind == d.kind);
}

TEST_CASE("constant maps survive down and up sampling") {
  for (int w = 1; w <= 9; ++w) {
    for (int h = 1; h <= 9; ++h) {
      const DepthMap c(w, h, DepthKind::kRelative, 2.5);
      for (int tw = 1; tw <= 5; ++tw) {
        for (int th = 1; th <= 5; ++th) {
          const DepthMap back = resample_nearest(resample_nearest(c, tw, th), w, h);
          CHECK(back.values == c.values);
        }
      }
    }
  }
}

TEST_CASE("resampling never invents values") {
  std::mt19937_64 rng(3);
  DepthMap d(7, 5, DepthKind::kMetric);
  for (double& v : d.values) v = rng() % 4 == 0 ? std::nan("") : static_cast<double>(rng() % 100);
  std::set<double> source;
  for (double v : d.values)
    if (!std::isnan(v)) source.insert(v);
  const auto [a, b] = resample_to_common_grid(d, d, 13, 3);
  CHECK(a.width == 13);
  CHECK(b.height == 3);
  for (double v : a.values) CHECK((std::isnan(v) || source.count(v) == 1));
  CHECK_THROWS_AS(resample_nearest(d, 0, 3), Error);
  CHECK_THROWS_AS(resample_nearest(DepthMap{}, 3, 3), Error);
}

TEST_CASE("oracle scene lifts with exact geometry") {
  const auto truth = random_truth(1, 1);
  SceneOutcome out = lift_scene(inputs_for(truth[0]), FilterPolicy{});
  REQUIRE(std::holds_alternative<LiftedSceneResult>(out));
  const auto& r = std::get<LiftedSceneResult>(out);
  const oracle::SceneScore s = oracle::score_scene(r.scene, r.annotations, truth[0]);
  CHECK(s.cloud_rmse < 1e-6);
  CHECK(std::abs(r.provenance.scale * truth[0].spec.alpha - 1.0) < 1e-10);
  CHECK(r.scene.consistent());
}

TEST_CASE("all-invalid depth is InsufficientValidPoints") {
  const auto truth = random_truth(1, 2);
  SceneInputs in = inputs_for(truth[0]);
  for (double& v : in.metric.values) v = std::nan("");
  const SceneOutcome out = lift_scene(in, FilterPolicy{});
  REQUIRE(std::holds_alternative<Rejection>(out));
  CHECK(std::get<Rejection>(out).reason == RejectReason::kInsufficientValidPoints);
}

TEST_CASE("instance over invalid depth is NoValidObjects") {
  const auto truth = random_truth(1, 3);
  SceneInputs in = inputs_for(truth[0]);
  for (Instance2D& inst : in.annotations.instances) {
    const BitMask m = *instance_mask(inst, in.annotations.width, in.annotations.height);
    for (std::size_t i = 0; i < m.bits.size(); ++i) {
      if (m.bits[i]) in.relative.values[i] = std::nan("");
    }
  }
  const SceneOutcome out = lift_scene(in, FilterPolicy{});
  REQUIRE(std::holds_alternative<Rejection>(out));
  CHECK(std::get<Rejection>(out).reason == RejectReason::kNoValidObjects);
}

TEST_CASE("other rejection reasons") {
  const auto truth = random_truth(1, 4);
  SceneInputs in = inputs_for(truth[0]);
  SceneInputs bad_k = in;
  bad_k.camera.intrinsics.fx = -1;
  CHECK(std::get<Rejection>(lift_scene(bad_k, {})).reason == RejectReason::kInvalidIntrinsics);
  SceneInputs no_up = in;
  no_up.camera.gravity.up = Eigen::Vector3d::Constant(std::nan(""));
  no_up.camera.gravity.field.reset();
  CHECK(std::get<Rejection>(lift_scene(no_up, {})).reason == RejectReason::kGravityUnavailable);
  SceneInputs bad_color = in;
  bad_color.color = ColorRaster(3, 3);
  CHECK(std::get<Rejection>(lift_scene(bad_color, {})).reason ==
        RejectReason::kInconsistentDimensions);
  // Depth at another resolution is resampled, not rejected.
  SceneInputs half = in;
  half.relative = resample_nearest(in.relative, in.relative.width / 2, in.relative.height / 2);
  CHECK(std::holds_alternative<LiftedSceneResult>(lift_scene(half, {})));
}

TEST_CASE("config parsing and fingerprint") {
  const std::string base = R"({"images_root":"i","relative_depth_root":"r",
    "metric_depth_root":"m","camera_root":"c","annotations":"a.json","output_root":"o"})";
  const PipelineConfig c = parse_config(base, "/data");
  CHECK(c.images_root == fs::path("/data/i"));
  CHECK(c.workers == 1);
  CHECK(c.filter.edge_margin_px == 2);
  CHECK(c.filter.outlier_k == 3.0);
  CHECK(c.filter.min_valid_points == 16);

  PipelineConfig other = c;
  other.workers = 8;
  other.output_root = "/elsewhere";
  CHECK(config_fingerprint(other) == config_fingerprint(c));
  other.filter.edge_margin_px = 3;
  CHECK(config_fingerprint(other) != config_fingerprint(c));

  const PipelineConfig round = parse_config(config_to_json(c), "/");
  CHECK(config_fingerprint(round) == config_fingerprint(c));

  CHECK_THROWS_AS(parse_config("{", "."), Error);
  CHECK_THROWS_AS(parse_config(R"({"images_root":"i"})", "."), Error);
  std::string bad = base;
  bad.insert(bad.size() - 1, R"(,"workers":0)");
  CHECK_THROWS_AS(parse_config(bad, "."), Error);
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("empty input set gives an empty manifest") {
  const fs::path dir = testing::scratch_dir("pipeline_empty");
  PipelineConfig c = oracle::write_fixture_set({}, dir);
  const BatchResult r = run_batch(c);
  CHECK(r.manifest.scenes.empty());
  CHECK(r.exit_code() == 0);
  const DatasetManifest m = read_manifest(read_file(manifest_path(c)));
  CHECK(m.scenes.empty());
  CHECK(m.config_fingerprint == config_fingerprint(c));
}

TEST_CASE("worker count does not change outputs") {
  PipelineConfig c = fixture("pipeline_workers", 10, 5);
  const fs::path root = c.output_root;
  c.output_root = root / "w1";
  c.workers = 1;
  const BatchResult a = run_batch(c);
  c.output_root = root / "w4";
  c.workers = 4;
  const BatchResult b = run_batch(c);
  CHECK(a.manifest == b.manifest);
  CHECK(a.manifest.scenes.size() == 10);
  CHECK(read_tree(root / "w1") == read_tree(root / "w4"));
}

TEST_CASE("completed runs are not reprocessed") {
  PipelineConfig c = fixture("pipeline_resume", 6, 6);
  const BatchResult first = run_batch(c);
  CHECK(first.processed == 6);
  const auto before = read_tree(c.output_root);
  const BatchResult again = run_batch(c, {.resume = true});
  CHECK(again.processed == 0);
  CHECK(again.skipped == 6);
  CHECK(read_tree(c.output_root) == before);

  // An interrupted append loses only the last line.
  const std::string manifest = read_file(manifest_path(c));
  write_file(manifest_path(c), manifest.substr(0, manifest.size() - 7));
  const BatchResult partial = run_batch(c, {.resume = true});
  CHECK(partial.processed == 1);
  CHECK(partial.skipped == 5);
  CHECK(read_tree(c.output_root) == before);
}

TEST_CASE("resume refuses a manifest from another config") {
  PipelineConfig c = fixture("pipeline_fingerprint", 2, 7);
  run_batch(c);
  c.filter.edge_margin_px = 5;
  try {
    run_batch(c, {.resume = true});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
  }
}

TEST_CASE("missing inputs reject the scene and the batch reports partial") {
  PipelineConfig c = fixture("pipeline_missing", 4, 8);
  const CocoDocument doc = CocoDocument::parse(read_file(c.annotations));
  const auto ids = scene_ids_for(doc);
  fs::remove(scene_input_paths(c, ids[1].first).metric);
  const BatchResult r = run_batch(c);
  CHECK(r.exit_code() == 1);
  CHECK(r.manifest.ok_count() + r.manifest.rejected_count() == ids.size());
  const ManifestEntry* e = r.manifest.find(ids[1].first);
  REQUIRE(e);
  CHECK(e->status == SceneStatus::kRejected);
  CHECK(e->reason == "MissingInput");
  CHECK(verify_outputs(c.output_root, r.manifest, &doc).empty());
}

TEST_CASE("unwritable output root is a startup error") {
  PipelineConfig c = fixture("pipeline_unwritable", 1, 9);
  write_file(c.output_root.parent_path() / "blocker", "x");
  c.output_root = c.output_root.parent_path() / "blocker" / "out";
  CHECK_THROWS_AS(run_batch(c), Error);
}

TEST_CASE("verify catches damaged outputs") {
  PipelineConfig c = fixture("pipeline_verify", 3, 10);
  const BatchResult r = run_batch(c);
  const CocoDocument doc = CocoDocument::parse(read_file(c.annotations));
  REQUIRE(verify_outputs(c.output_root, r.manifest, &doc).empty());

  const ManifestEntry& e = r.manifest.scenes[0];
  const std::string ply = read_file(c.output_root / e.point_cloud_path);
  write_file(c.output_root / e.point_cloud_path, ply.substr(0, ply.size() - 1));
  CHECK_FALSE(verify_outputs(c.output_root, r.manifest).empty());
  write_file(c.output_root / e.point_cloud_path, ply);

  DatasetManifest wrong = r.manifest;
  wrong.scenes[1].point_count += 1;
  CHECK(verify_outputs(c.output_root, wrong).size() == 1);
  DatasetManifest missing = r.manifest;
  missing.scenes.pop_back();
  CHECK(verify_outputs(c.output_root, missing, &doc).size() == 1);
}

TEST_CASE("every Ok scene has annotated instances and stats cover them") {
  PipelineConfig c = fixture("pipeline_stats", 5, 11);
  const BatchResult r = run_batch(c);
  std::size_t instances = 0;
  for (const ManifestEntry& e : r.manifest.scenes) {
    if (e.status != SceneStatus::kOk) continue;
    CHECK(e.instance_count >= 1);
    instances += e.instance_count;
  }
  const SceneStatistics s = collect_statistics(c.output_root, r.manifest);
  CHECK(s.scenes == r.manifest.ok_count());
  CHECK(s.instances == instances);
}

TEST_CASE("review sampling") {
  DatasetManifest m;
  for (int i = 0; i < 20; ++i) {
    ManifestEntry e;
    e.scene_id = "s" + std::to_string(100 + i);
    e.status = i % 4 == 0 ? SceneStatus::kRejected : SceneStatus::kOk;
    if (e.status == SceneStatus::kRejected) e.reason = "NoValidObjects";
    m.scenes.push_back(e);
  }
  CHECK(select_review_sample(m, 0, 1).empty());
  const auto a = select_review_sample(m, 5, 42);
  CHECK(a == select_review_sample(m, 5, 42));
  CHECK(a.size() == 5);
  CHECK(std::set<std::string>(a.begin(), a.end()).size() == 5);
  for (const auto& id : a) CHECK(m.find(id)->status == SceneStatus::kOk);

  const auto all = select_review_sample(m, 15, 7);
  CHECK(std::set<std::string>(all.begin(), all.end()).size() == 15);
  std::string warning;
  CHECK(select_review_sample(m, 99, 7, &warning).size() == 15);
  CHECK_FALSE(warning.empty());

  // Different seeds should not all agree.
  std::set<std::vector<std::string>> distinct;
  for (std::uint64_t seed = 0; seed < 10; ++seed) distinct.insert(select_review_sample(m, 3, seed));
  CHECK(distinct.size() > 1);
}

TEST_CASE("review bundle contents") {
  PipelineConfig c = fixture("pipeline_review", 3, 12);
  const BatchResult r = run_batch(c);
  const fs::path dir = c.output_root.parent_path() / "review";
  const ReviewBundle b = sample_for_review(c, r.manifest, 2, 9, dir);
  REQUIRE(b.scene_ids.size() == 2);
  for (const std::string& id : b.scene_ids) {
    CHECK(fs::is_regular_file(dir / id / "cloud.ply"));
    CHECK(fs::is_regular_file(dir / id / "annotations.json"));
    const std::string ppm = read_file(dir / id / "side_by_side.ppm");
    CHECK(ppm.rfind("P6\n96 36\n255\n", 0) == 0);
  }
  const auto bundle = nlohmann::json::parse(read_file(dir / "bundle.json"));
  CHECK(bundle["seed"] == 9);
  CHECK(bundle["scenes"].size() == 2);
  CHECK(sample_for_review(c, r.manifest, 0, 9, c.output_root.parent_path() / "review0")
            .scene_ids.empty());
}

TEST_CASE("overlay keeps the source on the left") {
  ColorRaster src(4, 2, 100);
  AnnotationSet2D set;
  set.width = 4;
  set.height = 2;
  Instance2D inst;
  inst.segmentation = PolygonSet{{0, 0, 2, 0, 2, 2, 0, 2}};
  set.instances.push_back(inst);
  const ColorRaster o = side_by_side_overlay(src, set);
  CHECK(o.width == 8);
  CHECK(o.height == 2);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 4; ++x) {
      const std::size_t i = (static_cast<std::size_t>(y) * 8 + x) * 3;
      CHECK(o.rgb[i] == 100);
    }
  }
  // Masked pixel on the right half differs from the source, unmasked matches.
  CHECK(o.rgb[(4) * 3] != 100);
  CHECK(o.rgb[(7) * 3] == 100);
}
