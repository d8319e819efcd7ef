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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lift3d {

// Row-major boolean raster. bits[y * width + x] != 0 means foreground.
struct BitMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  BitMask() = default;
  BitMask(int w, int h, bool fill = false);

  bool at(int x, int y) const { return bits[index(x, y)] != 0; }
  void set(int x, int y, bool v = true) { bits[index(x, y)] = v ? 1 : 0; }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(x);
  }
  std::size_t pixel_count() const { return bits.size(); }
  std::size_t area() const;

  // Tight pixel bounds as COCO (x, y, w, h); all zeros for an empty mask.
  struct Bounds {
    int x = 0, y = 0, w = 0, h = 0;
  };
  Bounds tight_bounds() const;

  friend bool operator==(const BitMask&, const BitMask&) = default;
};

// COCO run-length encoding: alternating background/foreground run lengths
// over the column-major pixel order, starting with background.
struct RleMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint32_t> counts;

  friend bool operator==(const RleMask&, const RleMask&) = default;
};

BitMask decode_rle_mask(const std::vector<std::uint32_t>& counts, int width,
                        int height);
inline BitMask decode_rle_mask(const RleMask& rle) {
  return decode_rle_mask(rle.counts, rle.width, rle.height);
}
RleMask encode_rle_mask(const BitMask& mask);

// COCO's compressed string form of the counts (6 bits per char, offset 48,
// counts after the second stored as deltas).
std::vector<std::uint32_t> rle_counts_from_string(std::string_view s);
std::string rle_counts_to_string(const std::vector<std::uint32_t>& counts);

// Each polygon is a flat [x0, y0, x1, y1, ...] list in pixel coordinates.
using Polygon = std::vector<double>;
using PolygonSet = std::vector<Polygon>;

struct RasterWarning {
  std::size_t polygon_index;
  std::string message;
};

// Even-odd fill; a pixel is set iff its center (x + 0.5, y + 0.5) is inside.
// Polygons with fewer than 3 vertices are skipped and reported in `warnings`.
BitMask rasterize_polygons(const PolygonSet& polygons, int width, int height,
                           std::vector<RasterWarning>* warnings = nullptr);

}  // namespace lift3d
