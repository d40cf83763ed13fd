// speechaug/tests/render_test.cc

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

#include <gtest/gtest.h>

#include <zlib.h>

#include "speechaug/augment.h"
#include "speechaug/errors.h"
#include "speechaug/render.h"
#include "test_util.h"

namespace speechaug {
namespace {

TEST(Render, TwoCellsMapToBlackAndWhite) {
  MelSpectrogram m(2, 1, std::vector<double>{-100.0, 0.0});
  const GrayImage img = RenderImage(m, ImageSpec{});
  ASSERT_EQ(img.width, 2u);
  ASSERT_EQ(img.height, 1u);
  EXPECT_EQ(img.at(0, 0), 0);
  EXPECT_EQ(img.at(1, 0), 255);
}

TEST(Render, ConstantGridIsMidGray) {
  const GrayImage img = RenderImage(MelSpectrogram(4, 3, -20.0), ImageSpec{});
  for (uint8_t p : img.pixels) EXPECT_EQ(p, 128);
}

TEST(Render, AxesAndOrientation) {
  MelSpectrogram m(98, 80, -50.0);
  m(10, 79) = 0.0;   // top channel
  m(20, 0) = -100.0;  // bottom channel
  const GrayImage img = RenderImage(m, ImageSpec{});
  EXPECT_EQ(img.width, 98u);
  EXPECT_EQ(img.height, 80u);
  EXPECT_EQ(img.at(10, 0), 255);
  EXPECT_EQ(img.at(20, 79), 0);
}

TEST(Render, ExplicitRangeAndGamma) {
  MelSpectrogram m(3, 1, std::vector<double>{-80.0, -40.0, 10.0});
  ImageSpec spec;
  spec.db_range = std::make_pair(-60.0, -20.0);
  spec.gamma = 2.0;
  const GrayImage img = RenderImage(m, spec);
  EXPECT_EQ(img.at(0, 0), 0);
  EXPECT_EQ(img.at(1, 0), static_cast<uint8_t>(std::lround(255.0 * 0.25)));
  EXPECT_EQ(img.at(2, 0), 255);
  spec.db_range = std::make_pair(0.0, 0.0);
  EXPECT_THROW(RenderImage(m, spec), Error);
}

TEST(Render, MonotoneInValue) {
  Rng rng(4);
  MelSpectrogram m(200, 1);
  for (auto &v : m.values()) v = -100.0 + 100.0 * rng.NextDouble();
  for (double gamma : {0.5, 1.0, 2.2}) {
    ImageSpec spec;
    spec.gamma = gamma;
    const GrayImage img = RenderImage(m, spec);
    for (std::size_t a = 0; a < 200; ++a)
      for (std::size_t b = 0; b < 200; ++b)
        if (m(a, 0) < m(b, 0)) ASSERT_LE(img.at(a, 0), img.at(b, 0));
  }
}

TEST(Render, FrequencyMaskIsAHorizontalStripe) {
  Rng rng(6);
  MelSpectrogram m(60, 40);
  for (auto &v : m.values()) v = -90.0 + 80.0 * rng.NextDouble();
  Rng mask_rng(1);
  std::vector<MaskBand> bands;
  MelSpectrogram masked;
  do {
    bands.clear();
    masked = FreqMask(m, 10, 1, -55.0, mask_rng, &bands);
  } while (bands[0].width == 0);
  const GrayImage img = RenderImage(masked, ImageSpec{});
  for (std::size_t c = bands[0].start; c < bands[0].start + bands[0].width; ++c) {
    const std::size_t row = 40 - 1 - c;
    for (std::size_t x = 1; x < 60; ++x) ASSERT_EQ(img.at(x, row), img.at(0, row));
  }
}

TEST(Pgm, EncodeDecodeRoundTrip) {
  GrayImage img{3, 2, {0, 1, 2, 3, 4, 255}};
  const auto bytes = EncodePgm(img);
  const std::string head(bytes.begin(), bytes.begin() + 11);
  EXPECT_EQ(head, "P5\n3 2\n255\n");
  const GrayImage back = DecodePgm(bytes);
  EXPECT_EQ(back.width, 3u);
  EXPECT_EQ(back.height, 2u);
  EXPECT_EQ(back.pixels, img.pixels);
  EXPECT_THROW(DecodePgm({'P', '6'}), Error);
}

uint32_t Be32(const std::vector<uint8_t> &b, std::size_t at) {
  return (uint32_t(b[at]) << 24) | (uint32_t(b[at + 1]) << 16) | (uint32_t(b[at + 2]) << 8) |
         b[at + 3];
}

TEST(Png, StructureAndPixels) {
  GrayImage img{4, 3, {}};
  for (int i = 0; i < 12; ++i) img.pixels.push_back(static_cast<uint8_t>(i * 20));
  const auto png = EncodePng(img);
  const std::vector<uint8_t> sig = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  ASSERT_TRUE(std::equal(sig.begin(), sig.end(), png.begin()));
  // Walk chunks, check CRCs, collect IDAT.
  std::size_t at = 8;
  std::vector<uint8_t> idat;
  std::vector<std::string> names;
  while (at < png.size()) {
    const uint32_t len = Be32(png, at);
    const std::string type(png.begin() + at + 4, png.begin() + at + 8);
    names.push_back(type);
    const uint32_t crc = static_cast<uint32_t>(crc32(0L, png.data() + at + 4, len + 4));
    ASSERT_EQ(crc, Be32(png, at + 8 + len)) << type;
    if (type == "IHDR") {
      EXPECT_EQ(Be32(png, at + 8), 4u);
      EXPECT_EQ(Be32(png, at + 12), 3u);
      EXPECT_EQ(png[at + 16], 8);  // bit depth
      EXPECT_EQ(png[at + 17], 0);  // grayscale
      EXPECT_EQ(png[at + 20], 0);  // not interlaced
    }
    if (type == "IDAT") idat.insert(idat.end(), png.begin() + at + 8, png.begin() + at + 8 + len);
    at += 12 + len;
  }
  EXPECT_EQ(names.front(), "IHDR");
  EXPECT_EQ(names.back(), "IEND");
  std::vector<uint8_t> raw(3 * (1 + 4));
  uLongf raw_len = raw.size();
  ASSERT_EQ(uncompress(raw.data(), &raw_len, idat.data(), idat.size()), Z_OK);
  ASSERT_EQ(raw_len, raw.size());
  for (int y = 0; y < 3; ++y) {
    EXPECT_EQ(raw[y * 5], 0);  // filter type none
    for (int x = 0; x < 4; ++x) EXPECT_EQ(raw[y * 5 + 1 + x], img.at(x, y));
  }
}

TEST(RenderSpectrogram, WritesChosenFormat) {
  testing::TempDir dir("render");
  const MelSpectrogram m(5, 4, std::vector<double>(20, -3.0));
  RenderSpectrogram(m, ImageSpec{}, dir / "a.pgm");
  EXPECT_EQ(DecodePgm(ReadFileBytes(dir / "a.pgm")).width, 5u);
  ImageSpec png;
  png.format = ImageFormat::kPng;
  RenderSpectrogram(m, png, dir / "a.png");
  EXPECT_EQ(ReadFileBytes(dir / "a.png")[1], 'P');
}

}  // namespace
}  // namespace speechaug
