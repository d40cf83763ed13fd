// speechaug/tests/config_test.cc

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

#include "speechaug/config.h"
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

TEST(Config, ParsesAugmentSection) {
  const ConfigFile cfg = ConfigFile::Parse(
      "# run config\n"
      "[augment]\n"
      "snr_db = 5.5   # quieter\n"
      "factors = [0.9, 1.0, 1.1]\n"
      "time_warp_w = 40\n"
      "fill = \"floor\"\n"
      "seed = 18446744073709551615\n",
      "t");
  AugmentationSpec spec;
  ApplyAugmentSection(cfg, &spec);
  EXPECT_DOUBLE_EQ(spec.noise.snr_db, 5.5);
  EXPECT_EQ(spec.speed.factors, (std::vector<double>{0.9, 1.0, 1.1}));
  EXPECT_EQ(spec.spec_augment.time_warp_w, 40);
  EXPECT_EQ(spec.spec_augment.freq_mask_f, 27);
  EXPECT_EQ(spec.spec_augment.fill, FillMode::kFloor);
  EXPECT_EQ(spec.noise.seed, UINT64_MAX);
  EXPECT_EQ(spec.speed.seed, UINT64_MAX);
  EXPECT_EQ(spec.spec_augment.seed, UINT64_MAX);
}

TEST(Config, RoundTripsThroughText) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    AugmentationSpec spec;
    spec.noise.snr_db = rng.NextDouble() * 60.0 - 20.0;
    spec.speed.factors.clear();
    for (int i = 0, n = static_cast<int>(rng.UniformInt(1, 6)); i < n; ++i)
      spec.speed.factors.push_back(0.1 + 2.0 * rng.NextDouble());
    spec.spec_augment.time_warp_w = static_cast<int>(rng.UniformInt(0, 200));
    spec.spec_augment.freq_mask_f = static_cast<int>(rng.UniformInt(0, 80));
    spec.spec_augment.n_freq_masks = static_cast<int>(rng.UniformInt(0, 5));
    spec.spec_augment.time_mask_t = static_cast<int>(rng.UniformInt(0, 300));
    spec.spec_augment.n_time_masks = static_cast<int>(rng.UniformInt(0, 5));
    spec.spec_augment.fill = rng.UniformInt(0, 1) ? FillMode::kFloor : FillMode::kUtteranceMean;
    const uint64_t seed = rng.NextU64();
    spec.noise.seed = spec.speed.seed = spec.spec_augment.seed = seed;

    AugmentationSpec back;
    ApplyAugmentSection(ConfigFile::Parse(AugmentSectionToToml(spec), "rt"), &back);
    ASSERT_EQ(back.noise.snr_db, spec.noise.snr_db);
    ASSERT_EQ(back.speed.factors, spec.speed.factors);
    ASSERT_EQ(back.spec_augment.time_warp_w, spec.spec_augment.time_warp_w);
    ASSERT_EQ(back.spec_augment.freq_mask_f, spec.spec_augment.freq_mask_f);
    ASSERT_EQ(back.spec_augment.n_freq_masks, spec.spec_augment.n_freq_masks);
    ASSERT_EQ(back.spec_augment.time_mask_t, spec.spec_augment.time_mask_t);
    ASSERT_EQ(back.spec_augment.n_time_masks, spec.spec_augment.n_time_masks);
    ASSERT_EQ(back.spec_augment.fill, spec.spec_augment.fill);
    ASSERT_EQ(back.noise.seed, seed);
  }
}

TEST(Config, FeatureAndScoreSections) {
  const ConfigFile cfg = ConfigFile::Parse(
      "[features]\nn_mels = 40\nhop_s = 0.02\n[score]\nlowercase = true\n", "t");
  FeatureParams p;
  ApplyFeatureSection(cfg, &p);
  EXPECT_EQ(p.n_mels, 40);
  EXPECT_DOUBLE_EQ(p.hop_s, 0.02);
  EXPECT_EQ(p.fft_size, 512);
  bool lower = false;
  ApplyScoreSection(cfg, &lower);
  EXPECT_TRUE(lower);
}

TEST(Config, RejectsMalformedInput) {
  const char *bad[] = {
      "snr_db = 1\n",                    // key outside a section
      "[augment\n",                      // unterminated header
      "[augment]\nsnr_db\n",             // no '='
      "[augment]\nsnr_db = 1\nsnr_db = 2\n",
      "[augment]\nfactors = [1, \"x\"]\n",
      "[augment]\nfill = \"unterminated\n",
      "[augment]\nsnr_db = ten\n",
      "[mystery]\nx = 1\n",
  };
  for (const char *text : bad)
    EXPECT_EQ(KindOf([&] { ConfigFile::Parse(text, "t"); }), ErrorKind::kConfig) << text;
}

TEST(Config, RejectsUnknownKeysAndWrongTypes) {
  AugmentationSpec spec;
  for (const char *text : {"[augment]\nsnr = 1\n", "[augment]\ntime_warp_w = 1.5\n",
                           "[augment]\nfill = \"zero\"\n", "[augment]\nseed = -1\n",
                           "[augment]\nsnr_db = \"10\"\n"}) {
    const ConfigFile cfg = ConfigFile::Parse(text, "t");
    EXPECT_EQ(KindOf([&] { ApplyAugmentSection(cfg, &spec); }), ErrorKind::kConfig) << text;
  }
}

TEST(Config, MissingFileIsConfigError) {
  EXPECT_EQ(KindOf([] { ConfigFile::Load("/nonexistent/speechaug.toml"); }),
            ErrorKind::kConfig);
}

}  // namespace
}  // namespace speechaug
