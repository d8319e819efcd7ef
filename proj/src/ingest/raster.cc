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

#include "lift3d/ingest/raster.h"

#include <algorithm>
#include <limits>

#include "lift3d/binary_io.h"
#include "lift3d/error.h"

namespace lift3d {
namespace {

RasterHeader read_header(ByteReader& r, std::string_view expected_magic) {
  RasterHeader h;
  const auto magic = r.read_bytes(4);
  if (magic != expected_magic) {
    throw ParseError("bad magic, expected " + std::string(expected_magic), 0);
  }
  std::memcpy(h.magic, magic.data(), 4);
  h.width = r.read<std::uint32_t>();
  h.height = r.read<std::uint32_t>();
  const auto dtype = r.read<std::uint8_t>();
  if (dtype > static_cast<std::uint8_t>(RasterDtype::kRgb8)) {
    throw ParseError("unknown dtype " + std::to_string(dtype), 12);
  }
  h.dtype = static_cast<RasterDtype>(dtype);
  h.scale = r.read<double>();
  if (h.width > static_cast<std::uint32_t>(std::numeric_limits<int>::max()) ||
      h.height > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    throw Error(ErrorCode::kFormat, "raster dimensions too large");
  }
  return h;
}

void write_header(ByteWriter& w, std::string_view magic, int width, int height,
                  RasterDtype dtype, double scale) {
  w.write_bytes(magic);
  w.write<std::uint32_t>(static_cast<std::uint32_t>(width));
  w.write<std::uint32_t>(static_cast<std::uint32_t>(height));
  w.write<std::uint8_t>(static_cast<std::uint8_t>(dtype));
  w.write<double>(scale);
}

std::size_t sample_size(RasterDtype dtype) {
  switch (dtype) {
    case RasterDtype::kFloat32: return 4;
    case RasterDtype::kUint16: return 2;
    case RasterDtype::kFloat64: return 8;
    case RasterDtype::kRgb8: return 3;
  }
  return 0;
}

void require_payload(const RasterHeader& h, const ByteReader& r,
                     std::size_t channels) {
  const std::size_t expected = static_cast<std::size_t>(h.width) * h.height *
                               channels * sample_size(h.dtype);
  if (r.remaining() != expected) {
    throw Error(ErrorCode::kFormat,
                "payload is " + std::to_string(r.remaining()) +
                    " bytes, header implies " + std::to_string(expected));
  }
}

double normalize_sample(double v) {
  if (!std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
  return v < 0.0 ? 0.0 : v;
}

}  // namespace

DepthMap load_depth_raster(std::string_view bytes, DepthKind kind) {
  ByteReader r(bytes);
  const RasterHeader h = read_header(r, kDepthMagic);
  if (h.dtype == RasterDtype::kRgb8) {
    throw Error(ErrorCode::kFormat, "depth raster cannot use rgb8 samples");
  }
  if (!std::isfinite(h.scale) || h.scale <= 0.0) {
    throw Error(ErrorCode::kFormat, "depth scale must be finite and positive");
  }
  require_payload(h, r, 1);

  DepthMap depth(static_cast<int>(h.width), static_cast<int>(h.height), kind);
  for (double& v : depth.values) {
    switch (h.dtype) {
      case RasterDtype::kFloat32:
        v = normalize_sample(static_cast<double>(r.read<float>()) * h.scale);
        break;
      case RasterDtype::kFloat64:
        v = normalize_sample(r.read<double>() * h.scale);
        break;
      case RasterDtype::kUint16: {
        const auto q = r.read<std::uint16_t>();
        v = q == 0 ? std::numeric_limits<double>::quiet_NaN() : q * h.scale;
        break;
      }
      case RasterDtype::kRgb8:
        break;
    }
  }
  return depth;
}

std::string encode_depth_raster(const DepthMap& depth, RasterDtype dtype,
                                double scale_to_meters) {
  LIFT3D_CHECK(dtype != RasterDtype::kRgb8, "depth rasters hold scalar samples");
  LIFT3D_CHECK(std::isfinite(scale_to_meters) && scale_to_meters > 0.0,
               "scale must be finite and positive");
  ByteWriter w;
  w.reserve(kRasterHeaderSize + depth.values.size() * sample_size(dtype));
  write_header(w, kDepthMagic, depth.width, depth.height, dtype, scale_to_meters);
  for (double v : depth.values) {
    const double raw = v / scale_to_meters;
    switch (dtype) {
      case RasterDtype::kFloat32:
        w.write<float>(static_cast<float>(raw));
        break;
      case RasterDtype::kFloat64:
        w.write<double>(raw);
        break;
      case RasterDtype::kUint16: {
        std::uint16_t q = 0;
        if (std::isfinite(raw) && raw > 0.0) {
          q = static_cast<std::uint16_t>(std::clamp(std::round(raw), 1.0, 65535.0));
        }
        w.write<std::uint16_t>(q);
        break;
      }
      case RasterDtype::kRgb8:
        break;
    }
  }
  return w.take();
}

ColorRaster load_color_raster(std::string_view bytes) {
  ByteReader r(bytes);
  const RasterHeader h = read_header(r, kColorMagic);
  if (h.dtype != RasterDtype::kRgb8) {
    throw Error(ErrorCode::kFormat, "color raster must use rgb8 samples");
  }
  require_payload(h, r, 1);
  ColorRaster c(static_cast<int>(h.width), static_cast<int>(h.height));
  const auto payload = r.read_bytes(c.rgb.size());
  std::memcpy(c.rgb.data(), payload.data(), payload.size());
  return c;
}

std::string encode_color_raster(const ColorRaster& color) {
  ByteWriter w;
  write_header(w, kColorMagic, color.width, color.height, RasterDtype::kRgb8, 1.0);
  w.write_bytes(std::string_view(reinterpret_cast<const char*>(color.rgb.data()),
                                 color.rgb.size()));
  return w.take();
}

std::string encode_ppm(const ColorRaster& color) {
  std::string out = "P6\n" + std::to_string(color.width) + " " +
                    std::to_string(color.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(color.rgb.data()), color.rgb.size());
  return out;
}

UpField load_up_field(std::string_view bytes) {
  ByteReader r(bytes);
  const RasterHeader h = read_header(r, kUpFieldMagic);
  if (h.dtype != RasterDtype::kFloat32 && h.dtype != RasterDtype::kFloat64) {
    throw Error(ErrorCode::kFormat, "up field must use float samples");
  }
  require_payload(h, r, 3);
  UpField f{static_cast<int>(h.width), static_cast<int>(h.height), {}};
  f.vectors.resize(static_cast<std::size_t>(h.width) * h.height);
  for (Eigen::Vector3d& v : f.vectors) {
    for (int k = 0; k < 3; ++k) {
      v[k] = h.dtype == RasterDtype::kFloat32
                 ? static_cast<double>(r.read<float>())
                 : r.read<double>();
    }
  }
  return f;
}

std::string encode_up_field(const UpField& field) {
  ByteWriter w;
  write_header(w, kUpFieldMagic, field.width, field.height,
               RasterDtype::kFloat64, 1.0);
  for (const Eigen::Vector3d& v : field.vectors) {
    for (int k = 0; k < 3; ++k) w.write<double>(v[k]);
  }
  return w.take();
}

}  // namespace lift3d
