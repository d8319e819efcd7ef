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

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace lift3d {

enum class DepthKind { kRelative, kMetric };

// Dense depth raster. Undefined pixels are stored as NaN; stored finite values
// are >= 0, and zero is treated as undefined downstream.
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;
  DepthKind kind = DepthKind::kMetric;

  DepthMap() = default;
  DepthMap(int w, int h, DepthKind k, double fill = 0.0)
      : width(w),
        height(h),
        values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill),
        kind(k) {}

  double& at(int x, int y) { return values[index(x, y)]; }
  double at(int x, int y) const { return values[index(x, y)]; }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(x);
  }
  std::size_t pixel_count() const { return values.size(); }
};

inline bool is_defined_depth(double d) { return std::isfinite(d) && d > 0.0; }

// Sample type codes of the shared raster header.
enum class RasterDtype : std::uint8_t {
  kFloat32 = 0,
  kUint16 = 1,
  kFloat64 = 2,
  kRgb8 = 3,
};

// Shared header: magic[4], u32 width, u32 height, u8 dtype, f64 scale.
struct RasterHeader {
  char magic[4];
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  RasterDtype dtype = RasterDtype::kFloat32;
  double scale = 1.0;
};
inline constexpr std::size_t kRasterHeaderSize = 4 + 4 + 4 + 1 + 8;

inline constexpr std::string_view kDepthMagic = "DPTH";
inline constexpr std::string_view kColorMagic = "RGB8";
inline constexpr std::string_view kUpFieldMagic = "UPVF";

// Sample values are multiplied by the header scale. For kUint16, the raw value
// 0 is the undefined sentinel. Non-finite samples load as NaN and negative
// samples load as 0.
DepthMap load_depth_raster(std::string_view bytes, DepthKind kind);
std::string encode_depth_raster(const DepthMap& depth, RasterDtype dtype,
                                double scale_to_meters = 1.0);

struct ColorRaster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  ColorRaster() = default;
  ColorRaster(int w, int h, std::uint8_t fill = 0)
      : width(w),
        height(h),
        rgb(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, fill) {}
};

ColorRaster load_color_raster(std::string_view bytes);
std::string encode_color_raster(const ColorRaster& color);
// Binary PPM (P6), for external viewers.
std::string encode_ppm(const ColorRaster& color);

// Per-pixel camera-frame vectors, 3 samples per pixel.
struct UpField {
  int width = 0;
  int height = 0;
  std::vector<Eigen::Vector3d> vectors;
};

UpField load_up_field(std::string_view bytes);
std::string encode_up_field(const UpField& field);

}  // namespace lift3d
