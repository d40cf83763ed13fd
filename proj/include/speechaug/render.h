// speechaug/render.h

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

#ifndef SPEECHAUG_RENDER_H_
#define SPEECHAUG_RENDER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "speechaug/dsp.h"

namespace speechaug {

enum class ImageFormat { kPgm, kPng };

struct ImageSpec {
  ImageFormat format = ImageFormat::kPgm;
  double gamma = 1.0;
  // (lo_db, hi_db); unset means the grid's own (min, max).
  std::optional<std::pair<double, double>> db_range;
};

/// 8-bit grayscale raster, row-major, row 0 at the top.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<uint8_t> pixels;

  uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

/// Time runs left to right (width = frames) and frequency bottom to top
/// (height = channels, the highest channel in row 0). Each value maps to
/// round(255 * ((v - lo) / (hi - lo))^gamma), clamped to [0, 255]; an auto
/// range with min == max renders uniform gray 128.
GrayImage RenderImage(const MelSpectrogram &spec, const ImageSpec &image_spec);

std::vector<uint8_t> EncodePgm(const GrayImage &image);
std::vector<uint8_t> EncodePng(const GrayImage &image);

void RenderSpectrogram(const MelSpectrogram &spec, const ImageSpec &image_spec,
                       const std::filesystem::path &path);

/// Parses binary PGM (P5, maxval 255). Used by tests and the compare mode.
GrayImage DecodePgm(const std::vector<uint8_t> &bytes);

}  // namespace speechaug

#endif  // SPEECHAUG_RENDER_H_
