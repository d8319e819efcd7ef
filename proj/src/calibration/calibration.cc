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

#include "lift3d/calibration/calibration.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lift3d/error.h"

namespace lift3d {
namespace {

// Linear interpolation between closest ranks; `sorted` is non-empty.
double quantile(const std::vector<double>& sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

void require_same_dims(const DepthMap& a, const DepthMap& b) {
  LIFT3D_CHECK(a.width == b.width && a.height == b.height,
               "depth maps differ in dimensions: " + std::to_string(a.width) +
                   "x" + std::to_string(a.height) + " vs " +
                   std::to_string(b.width) + "x" + std::to_string(b.height));
  LIFT3D_CHECK(a.values.size() == a.pixel_count() &&
                   b.values.size() == b.pixel_count(),
               "depth map storage does not match dimensions");
}

}  // namespace

const char* pixel_status_name(PixelStatus status) {
  switch (status) {
    case PixelStatus::kOk: return "Ok";
    case PixelStatus::kNonFinite: return "NonFinite";
    case PixelStatus::kNonPositive: return "NonPositive";
    case PixelStatus::kEdgeMargin: return "EdgeMargin";
    case PixelStatus::kOutlier: return "Outlier";
  }
  return "Unknown";
}

std::size_t ValidityMask::valid_count() const { return count(PixelStatus::kOk); }

std::size_t ValidityMask::count(PixelStatus status) const {
  return static_cast<std::size_t>(std::count(reasons.begin(), reasons.end(), status));
}

BitMask ValidityMask::to_bitmask() const {
  BitMask m(width, height);
  for (std::size_t i = 0; i < reasons.size(); ++i) m.bits[i] = valid(i) ? 1 : 0;
  return m;
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 32;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

ValidityMask compute_validity_mask(const DepthMap& relative,
                                   const DepthMap& metric,
                                   const FilterPolicy& policy) {
  require_same_dims(relative, metric);
  LIFT3D_CHECK(policy.edge_margin_px >= 0, "edge margin must be non-negative");

  ValidityMask mask{relative.width, relative.height,
                    std::vector<PixelStatus>(relative.pixel_count(), PixelStatus::kOk)};
  const int m = policy.edge_margin_px;
  for (int y = 0; y < relative.height; ++y) {
    for (int x = 0; x < relative.width; ++x) {
      const std::size_t i = relative.index(x, y);
      const double r = relative.values[i];
      const double d = metric.values[i];
      PixelStatus& status = mask.reasons[i];
      if (!std::isfinite(r) || !std::isfinite(d)) {
        status = PixelStatus::kNonFinite;
      } else if (r <= 0.0 || d <= 0.0) {
        status = PixelStatus::kNonPositive;
      } else if (x < m || y < m || x >= relative.width - m ||
                 y >= relative.height - m) {
        status = PixelStatus::kEdgeMargin;
      }
    }
  }

  if (policy.outlier_enabled) {
    std::vector<double> candidates;
    for (std::size_t i = 0; i < mask.reasons.size(); ++i) {
      if (mask.valid(i)) candidates.push_back(metric.values[i]);
    }
    if (!candidates.empty()) {
      std::sort(candidates.begin(), candidates.end());
      const double q1 = quantile(candidates, 0.25);
      const double q3 = quantile(candidates, 0.75);
      const double iqr = q3 - q1;
      const double lo = q1 - policy.outlier_k * iqr;
      const double hi = q3 + policy.outlier_k * iqr;
      for (std::size_t i = 0; i < mask.reasons.size(); ++i) {
        if (!mask.valid(i)) continue;
        const double d = metric.values[i];
        if (d < lo || d > hi) mask.reasons[i] = PixelStatus::kOutlier;
      }
    }
  }
  return mask;
}

ScaleFactor compute_scale_factor(const DepthMap& relative,
                                 const DepthMap& metric,
                                 const ValidityMask& mask,
                                 std::size_t min_valid_points) {
  require_same_dims(relative, metric);
  LIFT3D_CHECK(mask.width == relative.width && mask.height == relative.height,
               "validity mask differs in dimensions from depth maps");

  std::vector<double> rel, met;
  for (std::size_t i = 0; i < mask.reasons.size(); ++i) {
    if (!mask.valid(i)) continue;
    rel.push_back(relative.values[i]);
    met.push_back(metric.values[i]);
  }
  const std::size_t n = rel.size();
  if (n == 0 || n < min_valid_points) {
    throw Error(ErrorCode::kInsufficientValidPoints,
                std::to_string(n) + " valid points, need " +
                    std::to_string(std::max<std::size_t>(min_valid_points, 1)));
  }

  ScaleFactor sf;
  sf.valid_count = n;
  sf.mean_metric = pairwise_sum(met) / static_cast<double>(n);
  sf.mean_relative = pairwise_sum(rel) / static_cast<double>(n);
  if (!(sf.mean_relative > 0.0) || !std::isfinite(sf.mean_relative)) {
    throw Error(ErrorCode::kDegenerateRelativeDepth,
                "mean relative depth is not positive");
  }
  sf.s = sf.mean_metric / sf.mean_relative;
  if (!std::isfinite(sf.s) || !(sf.s > 0.0)) {
    throw Error(ErrorCode::kDegenerateRelativeDepth,
                "scale factor is not finite and positive");
  }
  return sf;
}

CalibratedDepthMap calibrate_depth(const DepthMap& relative,
                                   const ScaleFactor& scale,
                                   const ValidityMask& mask) {
  LIFT3D_CHECK(std::isfinite(scale.s) && scale.s > 0.0,
               "scale factor must be finite and positive");
  LIFT3D_CHECK(mask.width == relative.width && mask.height == relative.height,
               "validity mask differs in dimensions from depth map");

  CalibratedDepthMap out;
  out.width = relative.width;
  out.height = relative.height;
  out.mask = mask;
  out.source_scale = scale;
  out.values.assign(relative.pixel_count(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    if (mask.valid(i)) out.values[i] = scale.s * relative.values[i];
  }
  return out;
}

}  // namespace lift3d
