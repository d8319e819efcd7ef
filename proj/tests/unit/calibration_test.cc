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
#include <numeric>
#include <random>

#include "lift3d/calibration/calibration.h"
#include "lift3d/error.h"

using namespace lift3d;

namespace {

FilterPolicy plain_policy(int margin = 0) {
  FilterPolicy p;
  p.edge_margin_px = margin;
  p.outlier_enabled = false;
  p.min_valid_points = 1;
  return p;
}

DepthMap random_depth(std::mt19937_64& rng, int w, int h, DepthKind kind, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  DepthMap d(w, h, kind);
  for (double& v : d.values) v = u(rng);
  return d;
}

long double mean_over(const DepthMap& d, const ValidityMask& m) {
  long double sum = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (m.valid(i)) {
      sum += d.values[i];
      ++n;
    }
  }
  return sum / n;
}

ScaleFactor scale_of(const DepthMap& r, const DepthMap& m, const ValidityMask& mask) {
  return compute_scale_factor(r, m, mask, 1);
}

}  // namespace

TEST_CASE("all finite positive maps are fully valid") {
  DepthMap r(5, 4, DepthKind::kRelative, 1.0);
  DepthMap m(5, 4, DepthKind::kMetric, 2.0);
  const ValidityMask mask = compute_validity_mask(r, m, plain_policy());
  CHECK(mask.valid_count() == 20);
  CHECK(mask.count(PixelStatus::kOk) == 20);
}

TEST_CASE("a NaN metric pixel is NonFinite") {
  DepthMap r(4, 4, DepthKind::kRelative, 1.0);
  DepthMap m(4, 4, DepthKind::kMetric, 2.0);
  m.values[5] = std::nan("");
  const ValidityMask mask = compute_validity_mask(r, m, plain_policy());
  CHECK(mask.reasons[5] == PixelStatus::kNonFinite);
  CHECK(mask.valid_count() == 15);
  CHECK_FALSE(mask.to_bitmask().bits[5]);
}

TEST_CASE("edge margin of 2 keeps the inner 6x6") {
  DepthMap r(10, 10, DepthKind::kRelative, 1.0);
  DepthMap m(10, 10, DepthKind::kMetric, 1.0);
  const ValidityMask mask = compute_validity_mask(r, m, plain_policy(2));
  std::size_t inner = 0;
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      const bool expect = x >= 2 && x < 8 && y >= 2 && y < 8;
      CHECK(mask.valid(x, y) == expect);
      inner += expect;
    }
  }
  CHECK(inner == 36);
  CHECK(mask.valid_count() == 36);
  CHECK(mask.count(PixelStatus::kEdgeMargin) == 64);
}

TEST_CASE("reason precedence") {
  DepthMap r(6, 6, DepthKind::kRelative, 1.0);
  DepthMap m(6, 6, DepthKind::kMetric, 1.0);
  // Corner pixel: in the margin, non-positive and non-finite at once.
  r.values[0] = 0.0;
  m.values[0] = std::nan("");
  // Margin pixel that is also non-positive.
  r.values[1] = -1.0;
  // Margin only.
  const std::size_t margin_only = 2;
  // Interior non-positive in metric.
  m.at(3, 3) = 0.0;
  const ValidityMask mask = compute_validity_mask(r, m, plain_policy(1));
  CHECK(mask.reasons[0] == PixelStatus::kNonFinite);
  CHECK(mask.reasons[1] == PixelStatus::kNonPositive);
  CHECK(mask.reasons[margin_only] == PixelStatus::kEdgeMargin);
  CHECK(mask.reasons[m.index(3, 3)] == PixelStatus::kNonPositive);
  CHECK(mask.reasons[m.index(2, 2)] == PixelStatus::kOk);
}

TEST_CASE("valid and invalid sets partition the image") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    DepthMap r = random_depth(rng, 12, 9, DepthKind::kRelative, -0.5, 3.0);
    DepthMap m = random_depth(rng, 12, 9, DepthKind::kMetric, -0.5, 3.0);
    m.values[rng() % m.values.size()] = std::nan("");
    FilterPolicy p;
    p.edge_margin_px = static_cast<int>(rng() % 3);
    const ValidityMask mask = compute_validity_mask(r, m, p);
    std::size_t total = 0;
    for (auto s : {PixelStatus::kOk, PixelStatus::kNonFinite, PixelStatus::kNonPositive,
                   PixelStatus::kEdgeMargin, PixelStatus::kOutlier}) {
      total += mask.count(s);
    }
    CHECK(total == 108);
    CHECK(mask.valid_count() + (108 - mask.count(PixelStatus::kOk)) == 108);
  }
}

TEST_CASE("outlier fence follows the interquartile range") {
  // 100 metric depths 1..100 plus one far spike; quartiles stay near 25/75.
  DepthMap r(101, 1, DepthKind::kRelative, 1.0);
  DepthMap m(101, 1, DepthKind::kMetric);
  for (int i = 0; i < 100; ++i) m.values[i] = i + 1.0;
  m.values[100] = 1000.0;
  FilterPolicy p = plain_policy();
  p.outlier_enabled = true;
  p.outlier_k = 3.0;
  const ValidityMask mask = compute_validity_mask(r, m, p);
  CHECK(mask.reasons[100] == PixelStatus::kOutlier);
  CHECK(mask.count(PixelStatus::kOutlier) == 1);
  // A value inside the upper fence survives.
  m.values[100] = 200.0;
  CHECK(compute_validity_mask(r, m, p).valid_count() == 101);
  p.outlier_enabled = false;
  m.values[100] = 1e9;
  CHECK(compute_validity_mask(r, m, p).valid_count() == 101);
}

TEST_CASE("dimension mismatch is a contract violation") {
  DepthMap r(4, 4, DepthKind::kRelative, 1.0);
  DepthMap m(4, 5, DepthKind::kMetric, 1.0);
  try {
    compute_validity_mask(r, m, plain_policy());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kContractViolation);
  }
}

TEST_CASE("scale factor examples") {
  DepthMap r(3, 1, DepthKind::kRelative);
  DepthMap m(3, 1, DepthKind::kMetric);
  r.values = {1, 2, 3};
  m.values = {2, 4, 6};
  const ValidityMask mask = compute_validity_mask(r, m, plain_policy());
  const ScaleFactor s = scale_of(r, m, mask);
  CHECK(s.s == 2.0);
  CHECK(s.valid_count == 3);
  CHECK(s.mean_metric == 4.0);
  CHECK(s.mean_relative == 2.0);
  CHECK(scale_of(r, r, mask).s == 1.0);
}

TEST_CASE("scale factor errors") {
  DepthMap r(4, 4, DepthKind::kRelative, 1.0);
  DepthMap m(4, 4, DepthKind::kMetric, 1.0);
  const ValidityMask mask = compute_validity_mask(r, m, plain_policy());
  try {
    compute_scale_factor(r, m, mask, 17);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInsufficientValidPoints);
  }
  CHECK_NOTHROW(compute_scale_factor(r, m, mask, 16));

  // A mask that claims validity over zero relative depth.
  DepthMap zero(4, 4, DepthKind::kRelative, 0.0);
  try {
    compute_scale_factor(zero, m, mask, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateRelativeDepth);
  }
}

TEST_CASE("scale factor is homogeneous in the relative depth") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> logc(std::log(1e-3), std::log(1e3));
  for (int trial = 0; trial < 200; ++trial) {
    const DepthMap r = random_depth(rng, 16, 12, DepthKind::kRelative, 0.1, 5.0);
    const DepthMap m = random_depth(rng, 16, 12, DepthKind::kMetric, 0.5, 20.0);
    const ValidityMask mask = compute_validity_mask(r, m, plain_policy(1));
    const double c = std::exp(logc(rng));
    DepthMap rc = r;
    for (double& v : rc.values) v *= c;
    const double s1 = scale_of(r, m, mask).s;
    const double s2 = scale_of(rc, m, mask).s;
    CHECK(std::abs(s2 * c - s1) <= 1e-12 * s1);
  }
}

TEST_CASE("scale factor matches an extended-precision ratio of means") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const DepthMap r = random_depth(rng, 40, 30, DepthKind::kRelative, 0.01, 100.0);
    const DepthMap m = random_depth(rng, 40, 30, DepthKind::kMetric, 0.1, 80.0);
    const ValidityMask mask = compute_validity_mask(r, m, plain_policy(2));
    const ScaleFactor s = scale_of(r, m, mask);
    const long double want = mean_over(m, mask) / mean_over(r, mask);
    CHECK(std::abs(static_cast<long double>(s.s) - want) <= 1e-14L * want);
    CHECK(std::isfinite(s.s));
    CHECK(s.s > 0.0);
  }
}

TEST_CASE("pairwise sum stays accurate") {
  std::vector<double> v(1 << 20, 0.1);
  const double got = pairwise_sum(v);
  CHECK(std::abs(got - 0.1L * v.size()) < 1e-9);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{3.5}) == 3.5);
}

TEST_CASE("calibrated values are scaled relative depths") {
  DepthMap r(2, 1, DepthKind::kRelative);
  r.values = {3.5, 1.0};
  DepthMap m(2, 1, DepthKind::kMetric, 1.0);
  const ValidityMask mask = compute_validity_mask(r, m, plain_policy());
  ScaleFactor s;
  s.s = 2.0;
  const CalibratedDepthMap d = calibrate_depth(r, s, mask);
  CHECK(d.at(0, 0) == 7.0);
  CHECK(d.at(1, 0) == 2.0);
  s.s = 1.0;
  CHECK(calibrate_depth(r, s, mask).values == r.values);
  s.s = 0.0;
  CHECK_THROWS_AS(calibrate_depth(r, s, mask), Error);
}

TEST_CASE("calibration recovers true depth and keeps the mask") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> loga(std::log(0.01), std::log(100.0));
  for (int trial = 0; trial < 100; ++trial) {
    const DepthMap truth = random_depth(rng, 20, 15, DepthKind::kMetric, 0.5, 30.0);
    const double alpha = std::exp(loga(rng));
    DepthMap r = truth;
    r.kind = DepthKind::kRelative;
    for (double& v : r.values) v *= alpha;
    r.values[rng() % r.values.size()] = std::nan("");
    FilterPolicy p;
    p.edge_margin_px = 1;
    const ValidityMask mask = compute_validity_mask(r, truth, p);
    const ScaleFactor s = compute_scale_factor(r, truth, mask);
    CHECK(std::abs(s.s * alpha - 1.0) < 1e-12);
    const CalibratedDepthMap d = calibrate_depth(r, s, mask);
    CHECK(d.mask.reasons == mask.reasons);
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      if (mask.valid(i)) {
        CHECK(std::abs(d.values[i] - truth.values[i]) <= 1e-9 * truth.values[i]);
      } else {
        CHECK(std::isnan(d.values[i]));
      }
    }
  }
}

TEST_CASE("calibrated mean equals metric mean") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const DepthMap r = random_depth(rng, 24, 18, DepthKind::kRelative, 0.2, 7.0);
    const DepthMap m = random_depth(rng, 24, 18, DepthKind::kMetric, 1.0, 9.0);
    const ValidityMask mask = compute_validity_mask(r, m, FilterPolicy{});
    const CalibratedDepthMap d = calibrate_depth(r, compute_scale_factor(r, m, mask), mask);
    DepthMap sc(24, 18, DepthKind::kMetric);
    sc.values = d.values;
    const long double a = mean_over(sc, mask);
    const long double b = mean_over(m, mask);
    CHECK(std::abs(a - b) <= 1e-12L * b);
  }
}
