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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lift3d/ingest/mask.h"
#include "lift3d/ingest/raster.h"

namespace lift3d {

struct FilterPolicy {
  int edge_margin_px = 2;
  double outlier_k = 3.0;
  bool outlier_enabled = true;
  std::size_t min_valid_points = 16;
};

// Why a pixel was excluded. When several apply, the first in this order wins:
// NonFinite, NonPositive, EdgeMargin, Outlier.
enum class PixelStatus : std::uint8_t {
  kOk = 0,
  kNonFinite = 1,
  kNonPositive = 2,
  kEdgeMargin = 3,
  kOutlier = 4,
};

const char* pixel_status_name(PixelStatus status);

struct ValidityMask {
  int width = 0;
  int height = 0;
  std::vector<PixelStatus> reasons;

  bool valid(std::size_t i) const { return reasons[i] == PixelStatus::kOk; }
  bool valid(int x, int y) const {
    return valid(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(x));
  }
  std::size_t valid_count() const;
  std::size_t count(PixelStatus status) const;
  BitMask to_bitmask() const;
};

struct ScaleFactor {
  double s = 1.0;  // meters per relative-depth unit
  std::size_t valid_count = 0;
  double mean_metric = 0.0;
  double mean_relative = 0.0;
};

struct CalibratedDepthMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // meters; NaN on invalid pixels
  ValidityMask mask;
  ScaleFactor source_scale;

  double at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

// Sum with O(log n) error growth.
double pairwise_sum(std::span<const double> values);

// Outliers are metric depths outside [Q1 - k*IQR, Q3 + k*IQR], with quartiles
// taken over pixels that pass every other check.
ValidityMask compute_validity_mask(const DepthMap& relative,
                                   const DepthMap& metric,
                                   const FilterPolicy& policy);

// Ratio of the mean metric depth to the mean relative depth over valid pixels.
// Throws kInsufficientValidPoints or kDegenerateRelativeDepth.
ScaleFactor compute_scale_factor(const DepthMap& relative,
                                 const DepthMap& metric,
                                 const ValidityMask& mask,
                                 std::size_t min_valid_points = 16);

CalibratedDepthMap calibrate_depth(const DepthMap& relative,
                                   const ScaleFactor& scale,
                                   const ValidityMask& mask);

}  // namespace lift3d
