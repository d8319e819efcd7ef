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

#include "lift3d/ingest/mask.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lift3d/error.h"

namespace lift3d {

BitMask::BitMask(int w, int h, bool fill) : width(w), height(h) {
  LIFT3D_CHECK(w >= 0 && h >= 0, "mask dimensions must be non-negative");
  bits.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h),
              fill ? 1 : 0);
}

std::size_t BitMask::area() const {
  return static_cast<std::size_t>(
      std::count_if(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; }));
}

BitMask::Bounds BitMask::tight_bounds() const {
  int x0 = width, y0 = height, x1 = -1, y1 = -1;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (!at(x, y)) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) return {};
  return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

BitMask decode_rle_mask(const std::vector<std::uint32_t>& counts, int width,
                        int height) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::kMalformedRle, "negative mask dimensions");
  }
  const std::uint64_t total =
      static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
  const std::uint64_t sum =
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (sum != total) {
    throw Error(ErrorCode::kMalformedRle,
                "run lengths sum to " + std::to_string(sum) + ", expected " +
                    std::to_string(total));
  }

  BitMask mask(width, height);
  // Column-major position p maps to (x = p / height, y = p % height).
  std::uint64_t pos = 0;
  bool value = false;
  for (std::uint32_t run : counts) {
    if (value) {
      for (std::uint64_t p = pos; p < pos + run; ++p) {
        const int x = static_cast<int>(p / static_cast<std::uint64_t>(height));
        const int y = static_cast<int>(p % static_cast<std::uint64_t>(height));
        mask.set(x, y);
      }
    }
    pos += run;
    value = !value;
  }
  return mask;
}

RleMask encode_rle_mask(const BitMask& mask) {
  RleMask rle{mask.width, mask.height, {}};
  std::uint32_t run = 0;
  bool current = false;
  for (int x = 0; x < mask.width; ++x) {
    for (int y = 0; y < mask.height; ++y) {
      const bool v = mask.at(x, y);
      if (v != current) {
        rle.counts.push_back(run);
        run = 0;
        current = v;
      }
      ++run;
    }
  }
  rle.counts.push_back(run);
  return rle;
}

std::vector<std::uint32_t> rle_counts_from_string(std::string_view s) {
  std::vector<std::uint32_t> counts;
  std::size_t p = 0;
  while (p < s.size()) {
    std::int64_t x = 0;
    int k = 0;
    bool more = true;
    while (more) {
      if (p >= s.size()) {
        throw Error(ErrorCode::kMalformedRle, "truncated compressed RLE string");
      }
      const int c = static_cast<int>(s[p]) - 48;
      if (c < 0 || c > 63) {
        throw Error(ErrorCode::kMalformedRle, "invalid character in RLE string");
      }
      x |= static_cast<std::int64_t>(c & 0x1f) << (5 * k);
      more = (c & 0x20) != 0;
      ++p;
      ++k;
      if (!more && (c & 0x10)) x |= -(std::int64_t{1} << (5 * k));
      if (k > 12) throw Error(ErrorCode::kMalformedRle, "RLE value overflow");
    }
    if (counts.size() > 2) x += counts[counts.size() - 2];
    if (x < 0 || x > static_cast<std::int64_t>(UINT32_MAX)) {
      throw Error(ErrorCode::kMalformedRle, "RLE run out of range");
    }
    counts.push_back(static_cast<std::uint32_t>(x));
  }
  return counts;
}

std::string rle_counts_to_string(const std::vector<std::uint32_t>& counts) {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    std::int64_t x = counts[i];
    if (i > 2) x -= counts[i - 2];
    bool more = true;
    while (more) {
      int c = static_cast<int>(x & 0x1f);
      x >>= 5;
      more = (c & 0x10) ? x != -1 : x != 0;
      if (more) c |= 0x20;
      out.push_back(static_cast<char>(c + 48));
    }
  }
  return out;
}

BitMask rasterize_polygons(const PolygonSet& polygons, int width, int height,
                           std::vector<RasterWarning>* warnings) {
  BitMask mask(width, height);
  if (width == 0 || height == 0) return mask;

  // Edges of all polygons contribute to one even-odd crossing count, which is
  // how COCO treats multi-part segmentations that overlap.
  struct Edge {
    double x0, y0, x1, y1;
  };
  std::vector<Edge> edges;
  for (std::size_t pi = 0; pi < polygons.size(); ++pi) {
    const Polygon& poly = polygons[pi];
    const std::size_t n = poly.size() / 2;
    if (n < 3 || poly.size() % 2 != 0) {
      if (warnings) {
        warnings->push_back(
            {pi, "polygon with " + std::to_string(n) + " vertices skipped"});
      }
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      edges.push_back({poly[2 * i], poly[2 * i + 1], poly[2 * j], poly[2 * j + 1]});
    }
  }

  std::vector<double> crossings;
  for (int y = 0; y < height; ++y) {
    const double yc = y + 0.5;
    crossings.clear();
    for (const Edge& e : edges) {
      // Half-open in y so a vertex on the scanline counts once.
      if ((e.y0 > yc) == (e.y1 > yc)) continue;
      crossings.push_back(e.x0 + (yc - e.y0) * (e.x1 - e.x0) / (e.y1 - e.y0));
    }
    std::sort(crossings.begin(), crossings.end());
    for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
      // Centers with crossings[k] <= xc < crossings[k+1] are inside.
      const double w = static_cast<double>(width);
      const int x_begin = static_cast<int>(
          std::clamp(std::ceil(crossings[k] - 0.5), 0.0, w));
      const int x_end = static_cast<int>(
          std::clamp(std::ceil(crossings[k + 1] - 0.5), 0.0, w));
      for (int x = x_begin; x < x_end; ++x) mask.set(x, y);
    }
  }
  return mask;
}

}  // namespace lift3d
