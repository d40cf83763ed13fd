// speechaug/tests/audio_io_test.cc

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

#include <cstring>
#include <sstream>

#include "speechaug/audio_io.h"
#include "speechaug/errors.h"
#include "test_util.h"

namespace speechaug {
namespace {

using testing::TempDir;

// Hand-built RIFF header, independent of EncodeWav.
std::vector<uint8_t> MakeWav(const std::vector<int16_t> &pcm, int channels = 1,
                             int bits = 16, int format = 1, int rate = 16000) {
  std::vector<uint8_t> b;
  auto u32 = [&b](uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<uint8_t>(v >> (8 * i)));
  };
  auto u16 = [&b](uint16_t v) {
    b.push_back(static_cast<uint8_t>(v));
    b.push_back(static_cast<uint8_t>(v >> 8));
  };
  auto tag = [&b](const char *t) { b.insert(b.end(), t, t + 4); };
  const uint32_t data_bytes = static_cast<uint32_t>(pcm.size() * 2);
  tag("RIFF");
  u32(36 + data_bytes);
  tag("WAVE");
  tag("fmt ");
  u32(16);
  u16(static_cast<uint16_t>(format));
  u16(static_cast<uint16_t>(channels));
  u32(static_cast<uint32_t>(rate));
  u32(static_cast<uint32_t>(rate * channels * bits / 8));
  u16(static_cast<uint16_t>(channels * bits / 8));
  u16(static_cast<uint16_t>(bits));
  tag("data");
  u32(data_bytes);
  for (int16_t s : pcm) u16(static_cast<uint16_t>(s));
  return b;
}

ErrorKind KindOf(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kIo;
}

TEST(AudioBuffer, RejectsBadRateAndNonFinite) {
  EXPECT_THROW(AudioBuffer({0.0f}, 0), Error);
  EXPECT_THROW(AudioBuffer({std::nanf("")}, 16000), Error);
  AudioBuffer b({0.0f, 0.5f}, 8000);
  EXPECT_DOUBLE_EQ(b.duration_s(), 2.0 / 8000);
}

TEST(Wav, ReadsSixteenThousandFrames) {
  std::vector<int16_t> pcm(16000, 7);
  const AudioBuffer b = ParseWav(MakeWav(pcm));
  EXPECT_EQ(b.size(), 16000u);
  EXPECT_EQ(b.sample_rate_hz(), 16000);
  EXPECT_FLOAT_EQ(b.samples()[0], 7.0f / 32768.0f);
}

TEST(Wav, MinimumSampleIsMinusOne) {
  const AudioBuffer b = ParseWav(MakeWav({-32768, 32767}));
  EXPECT_EQ(b.samples()[0], -1.0f);
  EXPECT_FLOAT_EQ(b.samples()[1], 32767.0f / 32768.0f);
}

TEST(Wav, StereoIsUnsupported) {
  EXPECT_EQ(KindOf([] { ParseWav(MakeWav({1, 2, 3, 4}, 2)); }),
            ErrorKind::kUnsupportedFormat);
}

TEST(Wav, NonPcmAndEightBitAreUnsupported) {
  EXPECT_EQ(KindOf([] { ParseWav(MakeWav({1, 2}, 1, 16, 3)); }),
            ErrorKind::kUnsupportedFormat);
  EXPECT_EQ(KindOf([] { ParseWav(MakeWav({1, 2}, 1, 8)); }),
            ErrorKind::kUnsupportedFormat);
}

TEST(Wav, BadMagicIsMalformed) {
  auto bytes = MakeWav({1, 2});
  bytes[0] = 'X';
  EXPECT_EQ(KindOf([&] { ParseWav(bytes); }), ErrorKind::kMalformedWav);
  EXPECT_EQ(KindOf([] { ParseWav(std::vector<uint8_t>{}); }), ErrorKind::kMalformedWav);
}

TEST(Wav, ToleratesExtraChunks) {
  auto bytes = MakeWav({100, -100});
  // Insert an odd-sized LIST chunk (padded) between fmt and data.
  const std::vector<uint8_t> extra = {'L', 'I', 'S', 'T', 3, 0, 0, 0, 'a', 'b', 'c', 0};
  bytes.insert(bytes.begin() + 36, extra.begin(), extra.end());
  const AudioBuffer b = ParseWav(bytes);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_FLOAT_EQ(b.samples()[1], -100.0f / 32768.0f);
}

TEST(Wav, ZeroBufferWritesZeroWords) {
  const auto bytes = EncodeWav(AudioBuffer(std::vector<float>(10, 0.0f), 16000));
  ASSERT_EQ(bytes.size(), 44u + 20u);
  for (std::size_t i = 44; i < bytes.size(); ++i) EXPECT_EQ(bytes[i], 0);
  EXPECT_EQ(std::memcmp(bytes.data() + 36, "data", 4), 0);
}

TEST(Wav, SaturatesOnWrite) {
  const auto bytes = EncodeWav(AudioBuffer({2.0f, -2.0f}, 16000));
  const int16_t hi = static_cast<int16_t>(bytes[44] | (bytes[45] << 8));
  const int16_t lo = static_cast<int16_t>(bytes[46] | (bytes[47] << 8));
  EXPECT_EQ(hi, 32767);
  EXPECT_EQ(lo, -32768);
}

TEST(Wav, RoundTripWithinOneLsb) {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.UniformInt(0, 2000));
    auto x = testing::UniformNoise(rng, n, 1.0);
    const int rate = static_cast<int>(rng.UniformInt(1, 96000));
    const AudioBuffer in(x, rate);
    const AudioBuffer out = ParseWav(EncodeWav(in));
    ASSERT_EQ(out.size(), in.size());
    ASSERT_EQ(out.sample_rate_hz(), rate);
    for (std::size_t i = 0; i < n; ++i)
      ASSERT_LE(std::abs(out.samples()[i] - in.samples()[i]), 1.0 / 32768 + 1e-9);
  }
}

TEST(Wav, FileRoundTripIsAtomic) {
  TempDir dir("wav");
  const AudioBuffer in(testing::Tone(440, 0.5, 16000, 1600), 16000);
  WriteWav(in, dir / "a.wav");
  EXPECT_EQ(ReadWav(dir / "a.wav").size(), in.size());
  int entries = 0;
  for (const auto &e : std::filesystem::directory_iterator(dir.path())) {
    (void)e;
    ++entries;
  }
  EXPECT_EQ(entries, 1);
  EXPECT_EQ(KindOf([&] { ReadWav(dir / "missing.wav"); }), ErrorKind::kIo);
}

// Arbitrary and mutated byte strings never escape as anything but Error.
TEST(Wav, ParserIsTotal) {
  Rng rng(7);
  const auto valid = MakeWav({1, 2, 3, 4, 5, 6, 7, 8});
  for (int trial = 0; trial < 20000; ++trial) {
    std::vector<uint8_t> bytes;
    if (trial % 2 == 0) {
      bytes = valid;
      const int flips = static_cast<int>(rng.UniformInt(1, 6));
      for (int f = 0; f < flips; ++f)
        bytes[rng.UniformInt(0, bytes.size() - 1)] = static_cast<uint8_t>(rng.NextU64());
      bytes.resize(rng.UniformInt(0, bytes.size()));
    } else {
      bytes.resize(rng.UniformInt(0, 80));
      for (auto &v : bytes) v = static_cast<uint8_t>(rng.NextU64());
    }
    try {
      const AudioBuffer b = ParseWav(bytes);
      EXPECT_LE(b.size() * 2, bytes.size());
    } catch (const Error &) {
    }
  }
}

TEST(Tokenize, CollapsesWhitespaceRuns) {
  EXPECT_EQ(Tokenize("A  B"), (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(Tokenize("  \tx \n"), (std::vector<std::string>{"x"}));
  EXPECT_TRUE(Tokenize("   ").empty());
}

TEST(Manifest, ParsesRecordsInOrder) {
  std::istringstream in(
      "{\"id\":\"u1\",\"audio\":\"a.wav\",\"text\":\"HELLO WORLD\",\"kind\":\"word\"}\n"
      "\n"
      "{\"id\":\"u0\",\"audio\":\"b.wav\",\"text\":\"A  B\",\"kind\":\"word\","
      "\"duration_s\":1.5}\n");
  const auto records = ParseManifest(in, "test");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].id, "u1");
  EXPECT_EQ(records[0].transcript, (std::vector<std::string>{"HELLO", "WORLD"}));
  EXPECT_FALSE(records[0].duration_s.has_value());
  EXPECT_EQ(records[1].transcript, (std::vector<std::string>{"A", "B"}));
  EXPECT_DOUBLE_EQ(*records[1].duration_s, 1.5);
}

TEST(Manifest, DuplicateIdNamesTheId) {
  std::istringstream in(
      "{\"id\":\"dup7\",\"audio\":\"a.wav\",\"text\":\"x\",\"kind\":\"word\"}\n"
      "{\"id\":\"dup7\",\"audio\":\"b.wav\",\"text\":\"y\",\"kind\":\"word\"}\n");
  try {
    ParseManifest(in, "test");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::kManifestParse);
    EXPECT_NE(std::string(e.what()).find("dup7"), std::string::npos);
  }
}

TEST(Manifest, RejectsBadLines) {
  for (const char *line : {"{not json", "{\"id\":\"a\",\"audio\":\"a\",\"text\":\"x\"}",
                           "{\"id\":\"a\",\"audio\":\"a\",\"text\":\"x\",\"kind\":\"letter\"}",
                           "[1,2]"}) {
    std::istringstream in(line);
    EXPECT_EQ(KindOf([&] { ParseManifest(in, "t"); }), ErrorKind::kManifestParse) << line;
  }
}

TEST(Manifest, WriteThenLoadRoundTrips) {
  TempDir dir("manifest");
  std::vector<UtteranceRecord> recs = {
      {"b", "x/b.wav", {"P", "AH"}, TokenKind::kPhoneme, 0.25, std::nullopt},
      {"a", "a.wav", {"K"}, TokenKind::kPhoneme, std::nullopt, "a.lmel"}};
  WriteManifest(recs, dir / "m.jsonl");
  EXPECT_EQ(LoadManifest(dir / "m.jsonl"), recs);
}

}  // namespace
}  // namespace speechaug
