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

// lift3d command line: lift, stats, verify, review, oracle, bench.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lift3d/error.h"
#include "lift3d/file_util.h"
#include "lift3d/oracle/oracle.h"
#include "lift3d/output/output.h"
#include "lift3d/pipeline/batch.h"
#include "lift3d/pipeline/config.h"
#include "lift3d/pipeline/dataset.h"
#include "lift3d/pipeline/review.h"
#include "lift3d/stats/stats.h"

namespace fs = std::filesystem;
using namespace lift3d;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitFatal = 2;

void log_line(const std::string& s) { std::cerr << s << "\n"; }

DatasetManifest load_manifest(const PipelineConfig& config) {
  const fs::path p = manifest_path(config);
  if (!fs::exists(p)) throw Error(ErrorCode::kIo, "no manifest at " + p.string());
  return read_manifest(read_file(p));
}

int cmd_lift(const fs::path& config_path, int workers, bool resume) {
  PipelineConfig config = load_config(config_path);
  if (workers > 0) config.workers = workers;
  BatchOptions opt;
  opt.resume = resume;
  opt.log = log_line;
  const auto t0 = std::chrono::steady_clock::now();
  const BatchResult r = run_batch(config, opt);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("scenes=%zu ok=%zu rejected=%zu processed=%zu skipped=%zu seconds=%.3f\n",
              r.manifest.scenes.size(), r.manifest.ok_count(), r.manifest.rejected_count(),
              r.processed, r.skipped, secs);
  return r.exit_code();
}

int cmd_stats(const fs::path& config_path, fs::path out_dir, double bin_width, bool trimmed) {
  const PipelineConfig config = load_config(config_path);
  const DatasetManifest manifest = load_manifest(config);
  if (out_dir.empty()) out_dir = config.output_root / "stats";
  fs::create_directories(out_dir);
  const SceneStatistics stats = collect_statistics(config.output_root, manifest);
  write_file_atomic(out_dir / "stats.json", statistics_report_json(stats, bin_width));
  for (const auto& [cat, c] : stats.categories) {
    const Histogram h = height_histogram(stats, cat, bin_width, trimmed);
    const std::string stem = "heights_" + std::to_string(cat);
    const std::string title = (c.name.empty() ? "category " + std::to_string(cat) : c.name) +
                              " height (m)";
    write_file_atomic(out_dir / (stem + ".csv"), histogram_csv(h));
    write_file_atomic(out_dir / (stem + ".svg"), histogram_svg(h, title));
  }
  std::printf("scenes=%zu instances=%zu points=%zu categories=%zu out=%s\n", stats.scenes,
              stats.instances, stats.points, stats.categories.size(), out_dir.c_str());
  return kExitOk;
}

int cmd_verify(const fs::path& config_path) {
  const PipelineConfig config = load_config(config_path);
  const DatasetManifest manifest = load_manifest(config);
  const CocoDocument doc = CocoDocument::parse(read_file(config.annotations));
  if (manifest.config_fingerprint != config_fingerprint(config)) {
    log_line("warning: manifest was produced with a different configuration");
  }
  const std::vector<std::string> problems = verify_outputs(config.output_root, manifest, &doc);
  for (const std::string& p : problems) std::printf("problem: %s\n", p.c_str());
  std::printf("scenes=%zu ok=%zu rejected=%zu problems=%zu\n", manifest.scenes.size(),
              manifest.ok_count(), manifest.rejected_count(), problems.size());
  return problems.empty() ? kExitOk : kExitPartial;
}

int cmd_review(const fs::path& config_path, std::optional<std::size_t> n,
               std::optional<std::uint64_t> seed, fs::path out_dir) {
  const PipelineConfig config = load_config(config_path);
  const DatasetManifest manifest = load_manifest(config);
  if (out_dir.empty()) out_dir = config.output_root / "review";
  const ReviewBundle b = sample_for_review(config, manifest, n.value_or(config.review_n),
                                           seed.value_or(config.review_seed), out_dir);
  for (const std::string& w : b.warnings) log_line("warning: " + w);
  for (const std::string& id : b.scene_ids) std::printf("%s\n", id.c_str());
  std::printf("sampled=%zu out=%s\n", b.scene_ids.size(), out_dir.c_str());
  return kExitOk;
}

int cmd_oracle_generate(const fs::path& out, int scenes, std::uint64_t seed,
                        const std::string& kind, int width, int height,
                        std::optional<double> alpha, bool up_field) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_alpha(std::log(0.01), std::log(100.0));
  std::uniform_real_distribution<double> person(0.5, 2.0);
  std::vector<oracle::GroundTruth> truth;
  for (int i = 0; i < scenes; ++i) {
    oracle::SyntheticSceneSpec s;
    if (kind == "cards") {
      s = oracle::card_scene(rng, i, width, height);
    } else if (kind == "heights") {
      const std::vector<double> hs = {person(rng), person(rng), person(rng)};
      s = oracle::height_scene(rng, i, width, height, hs);
    } else {
      s = oracle::random_scene(rng, i, width, height);
    }
    s.alpha = alpha ? *alpha : std::exp(log_alpha(rng));
    truth.push_back(oracle::render_ground_truth(s));
  }
  oracle::FixtureOptions opt;
  opt.up_field = up_field;
  oracle::write_fixture_set(truth, out, opt);
  std::printf("scenes=%d config=%s\n", scenes, (out / "config.json").c_str());
  return kExitOk;
}

int cmd_oracle_score(const fs::path& fixture, fs::path report) {
  const PipelineConfig config = load_config(fixture / "config.json");
  const DatasetManifest manifest = load_manifest(config);
  std::vector<oracle::GroundTruth> truth;
  for (const auto& s : oracle::specs_from_json(read_file(fixture / "specs.json"))) {
    truth.push_back(oracle::render_ground_truth(s));
  }
  const oracle::RunScore score = oracle::score_run(config.output_root, manifest, truth);
  const std::string json = oracle::score_report_json(score);
  if (report.empty()) {
    std::cout << json;
  } else {
    write_file_atomic(report, json);
  }
  std::fprintf(stderr,
               "scored=%zu unmatched=%zu max_rmse=%.3g min_label_iou=%.6f min_box_iou=%.6f "
               "max_height_error=%.3g\n",
               score.scenes.size(), score.unmatched.size(), score.max_rmse, score.min_label_iou,
               score.min_box_iou, score.max_height_error);
  return score.unmatched.empty() ? kExitOk : kExitPartial;
}

int cmd_bench(const fs::path& config_path, std::vector<int> workers, bool keep) {
  const PipelineConfig base = load_config(config_path);
  if (workers.empty()) workers = {1, 2, 4};
  double baseline = 0.0;
  for (int w : workers) {
    PipelineConfig c = base;
    c.workers = w;
    c.output_root = base.output_root / ("bench_w" + std::to_string(w));
    fs::remove_all(c.output_root);
    const auto t0 = std::chrono::steady_clock::now();
    const BatchResult r = run_batch(c);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (baseline == 0.0) baseline = secs;
    std::printf("workers=%d scenes=%zu seconds=%.3f scenes_per_s=%.2f speedup=%.2f\n", w,
                r.manifest.scenes.size(), secs, r.manifest.scenes.size() / secs,
                baseline / secs);
    if (!keep) fs::remove_all(c.output_root);
  }
  std::printf("hardware_threads=%u\n", std::thread::hardware_concurrency());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lift 2D images with depth and camera predictions into metric 3D scenes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  fs::path config;
  int workers = 0;
  bool resume = false;

  auto* lift = app.add_subcommand("lift", "Lift every scene listed in the config");
  lift->add_option("-c,--config", config, "Pipeline config JSON")->required();
  lift->add_option("--workers", workers, "Worker threads (overrides the config)")
      ->check(CLI::PositiveNumber);
  lift->add_flag("--resume", resume, "Skip scenes already in the manifest");

  fs::path stats_out;
  double bin_width = 0.1;
  bool trimmed = false;
  auto* stats = app.add_subcommand("stats", "Dataset statistics and height histograms");
  stats->add_option("-c,--config", config, "Pipeline config JSON")->required();
  stats->add_option("--out", stats_out, "Output directory (default <output_root>/stats)");
  stats->add_option("--bin-width", bin_width, "Histogram bin width in meters")
      ->check(CLI::PositiveNumber);
  stats->add_flag("--trimmed", trimmed, "Histogram 1st-99th percentile heights");

  auto* verify = app.add_subcommand("verify", "Re-parse all outputs and check invariants");
  verify->add_option("-c,--config", config, "Pipeline config JSON")->required();

  std::optional<std::size_t> review_n;
  std::optional<std::uint64_t> seed;
  fs::path review_out;
  auto* review = app.add_subcommand("review", "Copy a seeded sample of scenes for inspection");
  review->add_option("-c,--config", config, "Pipeline config JSON")->required();
  review->add_option("-n,--count", review_n, "Scenes to sample (default from config)");
  review->add_option("--seed", seed, "Sampling seed (default from config)");
  review->add_option("--out", review_out, "Output directory (default <output_root>/review)");

  auto* oracle_cmd = app.add_subcommand("oracle", "Synthetic ground-truth fixtures");
  oracle_cmd->require_subcommand(1);
  fs::path fixture_dir;
  int scenes = 10;
  std::uint64_t oracle_seed = 1;
  std::string kind = "random";
  int width = 160;
  int height = 120;
  std::optional<double> alpha;
  bool up_field = false;
  auto* gen = oracle_cmd->add_subcommand("generate", "Write a fixture directory for lift");
  gen->add_option("--out", fixture_dir, "Fixture directory")->required();
  gen->add_option("--scenes", scenes, "Number of scenes")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", oracle_seed, "Generator seed");
  gen->add_option("--kind", kind, "Scene family")
      ->check(CLI::IsMember({"random", "cards", "heights"}));
  gen->add_option("--width", width, "Image width")->check(CLI::PositiveNumber);
  gen->add_option("--height", height, "Image height")->check(CLI::PositiveNumber);
  gen->add_option("--alpha", alpha, "Relative depth factor (default log-uniform in [0.01, 100])")
      ->check(CLI::PositiveNumber);
  gen->add_flag("--up-field", up_field, "Store gravity as a per-pixel up field");
  fs::path report;
  auto* score = oracle_cmd->add_subcommand("score", "Score a lift run against ground truth");
  score->add_option("--fixture", fixture_dir, "Fixture directory")->required();
  score->add_option("--report", report, "Write the JSON report here instead of stdout");

  std::vector<int> bench_workers;
  bool keep = false;
  auto* bench = app.add_subcommand("bench", "Time lift at several worker counts");
  bench->add_option("-c,--config", config, "Pipeline config JSON")->required();
  bench->add_option("--workers", bench_workers, "Worker counts to time")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_flag("--keep", keep, "Keep the per-run output directories");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitFatal;
  }

  try {
    if (*lift) return cmd_lift(config, workers, resume);
    if (*stats) return cmd_stats(config, stats_out, bin_width, trimmed);
    if (*verify) return cmd_verify(config);
    if (*review) return cmd_review(config, review_n, seed, review_out);
    if (*gen) {
      return cmd_oracle_generate(fixture_dir, scenes, oracle_seed, kind, width, height, alpha,
                                 up_field);
    }
    if (*score) return cmd_oracle_score(fixture_dir, report);
    if (*bench) return cmd_bench(config, bench_workers, keep);
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", std::string(error_code_name(e.code())).c_str(),
                 e.what());
    return kExitFatal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFatal;
  }
  return kExitFatal;
}
