// speechaug/tests/dsp_test.cc

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

#include <numbers>

#include "speechaug/dsp.h"
#include "speechaug/errors.h"
#include "test_util.h"

namespace speechaug {
namespace {

ErrorKind KindOf(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kIo;
}

double Mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

TEST(Rms, Examples) {
  EXPECT_DOUBLE_EQ(Rms(AudioBuffer(std::vector<float>(100, 0.5f), 16000)), 0.5);
  EXPECT_EQ(Rms(AudioBuffer(std::vector<float>(100, 0.0f), 16000)), 0.0);
  EXPECT_NEAR(Rms(AudioBuffer({0.3f, -0.4f}, 16000)), 0.353553, 1e-6);
  EXPECT_EQ(KindOf([] { Rms(AudioBuffer({}, 16000)); }), ErrorKind::kEmptySignal);
}

TEST(Mel, MatchesFormulaAndIsMonotone) {
  EXPECT_EQ(HzToMel(0.0), 0.0);
  EXPECT_NEAR(HzToMel(1000.0), Mel(1000.0), 1e-9);
  double prev = -1.0;
  for (double f = 0.0; f <= 24000.0; f += 0.5) {
    const double m = HzToMel(f);
    ASSERT_GT(m, prev);
    prev = m;
    ASSERT_NEAR(MelToHz(m), f, 1e-6 * (1.0 + f));
  }
}

TEST(Fft, MatchesDirectDft) {
  Rng rng(3);
  for (int n : {1, 2, 8, 64, 512}) {
    std::vector<std::complex<double>> x(n);
    for (auto &v : x) v = {rng.NextDouble() - 0.5, rng.NextDouble() - 0.5};
    auto y = x;
    Fft(y);
    for (int k = 0; k < n; ++k) {
      std::complex<double> acc = 0.0;
      for (int i = 0; i < n; ++i)
        acc += x[i] * std::polar(1.0, -2.0 * std::numbers::pi * k * i / n);
      ASSERT_NEAR(std::abs(acc - y[k]), 0.0, 1e-9) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Hann, IsPeriodic) {
  const auto w = HannWindow(400);
  ASSERT_EQ(w.size(), 400u);
  EXPECT_EQ(w[0], 0.0);
  EXPECT_NEAR(w[200], 1.0, 1e-15);
  EXPECT_NEAR(w[100], 0.5, 1e-12);
  EXPECT_NEAR(w[1], w[399], 1e-15);
}

TEST(LogMel, SilenceGivesFloorEverywhere) {
  const MelSpectrogram m =
      ComputeLogMel(AudioBuffer(std::vector<float>(16000, 0.0f), 16000), FeatureParams{});
  ASSERT_EQ(m.num_frames(), 98u);
  ASSERT_EQ(m.num_channels(), 80u);
  for (double v : m.values()) ASSERT_EQ(v, -100.0);
  EXPECT_DOUBLE_EQ(m.frame_hop_s, 0.010);
  EXPECT_DOUBLE_EQ(m.fmax_hz, 8000.0);
}

TEST(LogMel, FrameCountFormulaHolds) {
  Rng rng(11);
  FeatureParams p;
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(rng.UniformInt(400, 6000));
    const MelSpectrogram m = ComputeLogMel(AudioBuffer(std::vector<float>(n, 0.1f), 16000), p);
    ASSERT_EQ(m.num_frames(), 1 + (n - 400) / 160) << n;
    ASSERT_EQ(NumFrames(n, 400, 160), 1 + (n - 400) / 160);
  }
  EXPECT_EQ(NumFrames(399, 400, 160), 0u);
}

TEST(LogMel, ToneLandsInNearestCenterChannel) {
  FeatureParams p;
  // Filter centers are equally spaced in mel between fmin and fmax.
  const double top = Mel(8000.0);
  int nearest = 0;
  double best = 1e300;
  for (int m = 0; m < p.n_mels; ++m) {
    const double center = top * (m + 1) / (p.n_mels + 1);
    if (std::abs(center - Mel(1000.0)) < best) {
      best = std::abs(center - Mel(1000.0));
      nearest = m;
    }
  }
  const MelSpectrogram spec =
      ComputeLogMel(AudioBuffer(testing::Tone(1000.0, 0.5, 16000, 16000), 16000), p);
  for (std::size_t t = 0; t < spec.num_frames(); ++t) {
    const auto row = spec.Frame(t);
    const auto argmax = std::max_element(row.begin(), row.end()) - row.begin();
    ASSERT_EQ(argmax, nearest) << "frame " << t;
  }
}

TEST(LogMel, DoublingRaisesUnclampedCellsBySixDb) {
  Rng rng(5);
  auto x = testing::UniformNoise(rng, 8000, 0.2);
  std::vector<float> x2(x);
  for (auto &v : x2) v *= 2.0f;
  const auto a = ComputeLogMel(AudioBuffer(x, 16000), FeatureParams{});
  const auto b = ComputeLogMel(AudioBuffer(x2, 16000), FeatureParams{});
  const double gain = 20.0 * std::log10(2.0);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    if (a.values()[i] <= -100.0) continue;
    ASSERT_NEAR(b.values()[i] - a.values()[i], gain, 1e-6);
    ++checked;
  }
  EXPECT_GT(checked, 1000u);
}

TEST(LogMel, ErrorsOnShortSignalAndBadParams) {
  EXPECT_EQ(KindOf([] {
              ComputeLogMel(AudioBuffer(std::vector<float>(399, 0.0f), 16000), FeatureParams{});
            }),
            ErrorKind::kSignalTooShort);
  FeatureParams bad;
  bad.fft_size = 500;
  EXPECT_EQ(KindOf([&] { bad.Validate(16000); }), ErrorKind::kBadParams);
  bad = FeatureParams{};
  bad.fft_size = 256;  // shorter than the 400-sample window
  EXPECT_EQ(KindOf([&] { bad.Validate(16000); }), ErrorKind::kBadParams);
  bad = FeatureParams{};
  bad.fmax_hz = 9000.0;
  EXPECT_EQ(KindOf([&] { bad.Validate(16000); }), ErrorKind::kBadParams);
  bad = FeatureParams{};
  bad.hop_s = 0.05;
  EXPECT_EQ(KindOf([&] { bad.Validate(16000); }), ErrorKind::kBadParams);
}

TEST(Filterbank, TrianglesPeakAtCenters) {
  MelFilterbank fb(80, 512, 16000, 0.0, 8000.0);
  ASSERT_EQ(fb.num_filters(), 80);
  for (int m = 0; m < 80; ++m) {
    EXPECT_NEAR(HzToMel(fb.centers_hz()[m]), Mel(8000.0) * (m + 1) / 81, 1e-9);
    for (int k = 0; k <= 256; ++k) {
      const double w = fb.Weight(m, k);
      ASSERT_GE(w, 0.0);
      ASSERT_LE(w, 1.0 + 1e-12);
    }
  }
}

TEST(Ratio, ApproximatesWithSmallTerms) {
  const Fraction f = ApproximateRatio(1.0 / 1.1);
  EXPECT_EQ(f.num, 10);
  EXPECT_EQ(f.den, 11);
  const Fraction h = ApproximateRatio(0.5);
  EXPECT_EQ(h.num, 1);
  EXPECT_EQ(h.den, 2);
  const Fraction pi = ApproximateRatio(std::numbers::pi);
  EXPECT_LE(pi.num, 1000);
  EXPECT_LE(pi.den, 1000);
  EXPECT_NEAR(static_cast<double>(pi.num) / pi.den, std::numbers::pi, 1e-5);
}

TEST(Resample, SameRateIsIdentity) {
  Rng rng(1);
  const AudioBuffer in(testing::UniformNoise(rng, 1000, 0.5), 16000);
  EXPECT_EQ(Resample(in, 16000), in);
  EXPECT_EQ(KindOf([] { Resample(AudioBuffer({}, 16000), 8000); }), ErrorKind::kEmptySignal);
}

TEST(Resample, ToneSurvivesDownsampling) {
  const AudioBuffer in(testing::Tone(440.0, 0.5, 16000, 16000), 16000);
  const AudioBuffer out = Resample(in, 8000);
  EXPECT_EQ(out.sample_rate_hz(), 8000);
  EXPECT_NEAR(static_cast<double>(out.size()), 8000.0, 2.0);
  // 8000-point DFT at 8 kHz: 1 Hz per bin.
  EXPECT_NEAR(static_cast<double>(testing::PeakBin(out.samples(), 8000)), 440.0, 1.0);
}

TEST(Resample, RoundTripPreservesToneFrequency) {
  for (double f : {300.0, 1234.0, 3500.0}) {
    const AudioBuffer in(testing::Tone(f, 0.5, 16000, 8000), 16000);
    const AudioBuffer back = Resample(Resample(in, 11025), 16000);
    // 8000-point DFT at 16 kHz: 2 Hz per bin.
    EXPECT_NEAR(static_cast<double>(testing::PeakBin(back.samples(), 8000)), f / 2.0, 1.0);
  }
}

TEST(Dump, RoundTripsAtFloatPrecision) {
  Rng rng(9);
  MelSpectrogram m(7, 5);
  for (auto &v : m.values()) v = rng.NextDouble() * 100.0 - 100.0;
  const auto bytes = EncodeMelDump(m);
  ASSERT_EQ(bytes.size(), 16u + 7 * 5 * 4);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "LMEL");
  const MelSpectrogram back = DecodeMelDump(bytes);
  ASSERT_EQ(back.num_frames(), 7u);
  ASSERT_EQ(back.num_channels(), 5u);
  for (std::size_t i = 0; i < m.values().size(); ++i)
    EXPECT_EQ(back.values()[i], static_cast<double>(static_cast<float>(m.values()[i])));
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_EQ(KindOf([&] { DecodeMelDump(truncated); }), ErrorKind::kMalformedDump);
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_EQ(KindOf([&] { DecodeMelDump(bad_magic); }), ErrorKind::kMalformedDump);
}

}  // namespace
}  // namespace speechaug
