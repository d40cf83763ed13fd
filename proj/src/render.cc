// speechaug/render.cc

// Copyright 2026  The speechaug Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "speechaug/render.h"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <string>
#include <tuple>

#include "speechaug/audio_io.h"
#include "speechaug/errors.h"

namespace speechaug {

GrayImage RenderImage(const MelSpectrogram &spec, const ImageSpec &image_spec) {
  if (spec.num_frames() == 0 || spec.num_channels() == 0)
    throw Error(ErrorKind::kBadParams, "cannot render an empty spectrogram");
  if (!(image_spec.gamma > 0.0) || !std::isfinite(image_spec.gamma))
    throw Error(ErrorKind::kBadParams, "gamma must be positive");

  GrayImage img;
  img.width = spec.num_frames();
  img.height = spec.num_channels();
  img.pixels.assign(img.width * img.height, 128);

  double lo, hi;
  if (image_spec.db_range) {
    std::tie(lo, hi) = *image_spec.db_range;
    if (!(lo < hi)) throw Error(ErrorKind::kBadParams, "db range needs lo < hi");
  } else {
    const auto [mn, mx] = std::minmax_element(spec.values().begin(), spec.values().end());
    lo = *mn;
    hi = *mx;
    if (lo == hi) return img;  // degenerate range: uniform mid-gray
  }

  const double span = hi - lo;
  for (std::size_t t = 0; t < img.width; ++t) {
    for (std::size_t m = 0; m < img.height; ++m) {
      double u = std::clamp((spec(t, m) - lo) / span, 0.0, 1.0);
      if (image_spec.gamma != 1.0) u = std::pow(u, image_spec.gamma);
      const double p = std::clamp(std::round(255.0 * u), 0.0, 255.0);
      const std::size_t row = img.height - 1 - m;
      img.pixels[row * img.width + t] = static_cast<uint8_t>(p);
    }
  }
  return img;
}

std::vector<uint8_t> EncodePgm(const GrayImage &image) {
  const std::string header =
      "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

namespace {

void PutBe32(std::vector<uint8_t> *out, uint32_t v) {
  for (int i = 3; i >= 0; --i) out->push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void PutChunk(std::vector<uint8_t> *out, const char *type,
              const std::vector<uint8_t> &data) {
  PutBe32(out, static_cast<uint32_t>(data.size()));
  const std::size_t type_pos = out->size();
  out->insert(out->end(), type, type + 4);
  out->insert(out->end(), data.begin(), data.end());
  const uLong crc = crc32(0L, out->data() + type_pos, static_cast<uInt>(4 + data.size()));
  PutBe32(out, static_cast<uint32_t>(crc));
}

}  // namespace

std::vector<uint8_t> EncodePng(const GrayImage &image) {
  static const uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  std::vector<uint8_t> out(kSignature, kSignature + 8);

  std::vector<uint8_t> ihdr;
  PutBe32(&ihdr, static_cast<uint32_t>(image.width));
  PutBe32(&ihdr, static_cast<uint32_t>(image.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(0);  // grayscale
  ihdr.push_back(0);  // deflate
  ihdr.push_back(0);  // adaptive filtering
  ihdr.push_back(0);  // no interlace
  PutChunk(&out, "IHDR", ihdr);

  std::vector<uint8_t> raw;
  raw.reserve((image.width + 1) * image.height);
  for (std::size_t y = 0; y < image.height; ++y) {
    raw.push_back(0);  // filter: none
    const auto *row = image.pixels.data() + y * image.width;
    raw.insert(raw.end(), row, row + image.width);
  }
  uLongf packed_len = compressBound(static_cast<uLong>(raw.size()));
  std::vector<uint8_t> packed(packed_len);
  if (compress2(packed.data(), &packed_len, raw.data(), static_cast<uLong>(raw.size()),
                Z_BEST_COMPRESSION) != Z_OK)
    throw Error(ErrorKind::kIo, "zlib compression failed");
  packed.resize(packed_len);
  PutChunk(&out, "IDAT", packed);
  PutChunk(&out, "IEND", {});
  return out;
}

void RenderSpectrogram(const MelSpectrogram &spec, const ImageSpec &image_spec,
                       const std::filesystem::path &path) {
  const GrayImage img = RenderImage(spec, image_spec);
  WriteFileAtomic(path, image_spec.format == ImageFormat::kPng ? EncodePng(img)
                                                               : EncodePgm(img));
}

GrayImage DecodePgm(const std::vector<uint8_t> &bytes) {
  // Header: "P5", width, height, maxval separated by single whitespace runs.
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
  };
  auto read_int = [&]() -> std::size_t {
    skip_space();
    std::size_t v = 0;
    bool any = false;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos++] - '0');
      any = true;
      if (v > (1u << 30)) break;
    }
    if (!any) throw Error(ErrorKind::kIo, "bad PGM header");
    return v;
  };
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
    throw Error(ErrorKind::kIo, "not a binary PGM");
  pos = 2;
  GrayImage img;
  img.width = read_int();
  img.height = read_int();
  if (read_int() != 255) throw Error(ErrorKind::kIo, "PGM maxval must be 255");
  ++pos;  // single whitespace after maxval
  if (bytes.size() < pos || bytes.size() - pos != img.width * img.height)
    throw Error(ErrorKind::kIo, "PGM payload size mismatch");
  img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return img;
}

}  // namespace speechaug
