// speechaug/augment.h

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

#ifndef SPEECHAUG_AUGMENT_H_
#define SPEECHAUG_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "speechaug/audio_io.h"
#include "speechaug/dsp.h"
#include "speechaug/rng.h"

namespace speechaug {

struct NoiseSpec {
  double snr_db = 10.0;
  uint64_t seed = 0;
};

struct SpeedSpec {
  std::vector<double> factors = {0.5, 0.9, 1.0, 1.1, 1.5};
  uint64_t seed = 0;
};

enum class FillMode { kFloor, kUtteranceMean };

const char *FillModeName(FillMode mode);

/// SpecAugment policy. Counts are frames (W, T) or mel channels (F).
struct SpecAugmentSpec {
  int time_warp_w = 80;
  int freq_mask_f = 27;
  int n_freq_masks = 2;
  int time_mask_t = 100;
  int n_time_masks = 2;
  FillMode fill = FillMode::kUtteranceMean;
  uint64_t seed = 0;

  void Validate() const;
};

/// All augmentation settings, as read from the [augment] config section.
struct AugmentationSpec {
  NoiseSpec noise;
  SpeedSpec speed;
  SpecAugmentSpec spec_augment;
};

// ---------------------------------------------------------------------------
// Additive white Gaussian noise.

/// Standard deviation of zero-mean Gaussian noise whose RMS puts it
/// `snr_db` below a signal of RMS `signal_rms`. Throws SilentSignal when the
/// signal RMS is zero.
double DeriveNoiseStd(double signal_rms, double snr_db);

struct NoiseResult {
  AudioBuffer audio;
  std::size_t clip_count = 0;
};

/// out[i] = clamp(in[i] + n[i], -1, 1) with n ~ N(0, sigma^2) drawn from
/// Rng(spec.seed). The SNR reference is the RMS of the whole buffer.
NoiseResult AddGaussianNoise(const AudioBuffer &buffer, const NoiseSpec &spec);

// ---------------------------------------------------------------------------
// Speed perturbation.

/// Uniform draw over the (sorted, de-duplicated) factor set, seeded by
/// UtteranceSeed(spec.seed, utterance_id).
double PickSpeedFactor(const SpeedSpec &spec, std::string_view utterance_id);

/// Returns x(alpha * t) at the input sample rate: the audio plays alpha times
/// faster, its length becomes round(N / alpha) and every frequency scales by
/// alpha (pitch moves with tempo).
AudioBuffer SpeedPerturb(const AudioBuffer &buffer, double alpha);

// ---------------------------------------------------------------------------
// SpecAugment.

struct MaskBand {
  std::size_t start = 0;
  std::size_t width = 0;

  bool operator==(const MaskBand &other) const = default;
};

double FillValue(const MelSpectrogram &spec, FillMode mode);

/// Piecewise-linear remap of the frame axis: a random source frame c moves
/// to c + w while frames 0 and num_frames - 1 stay put. Identity (and no
/// draws) when W == 0 or num_frames <= 2W.
MelSpectrogram TimeWarp(const MelSpectrogram &spec, int max_warp, Rng &rng);

/// `num_masks` frequency masks, each of width f ~ U{0..min(F, channels)}
/// starting at f0 ~ U{0..channels - f}. Applied bands are appended to
/// `applied` when it is non-null.
MelSpectrogram FreqMask(const MelSpectrogram &spec, int max_width, int num_masks,
                        double fill_value, Rng &rng,
                        std::vector<MaskBand> *applied = nullptr);

/// Frame-axis counterpart of FreqMask.
MelSpectrogram TimeMask(const MelSpectrogram &spec, int max_width, int num_masks,
                        double fill_value, Rng &rng,
                        std::vector<MaskBand> *applied = nullptr);

/// Time warp, then the frequency masks, then the time masks, all from one
/// Rng(spec.seed) stream. The fill value is taken from the input before any
/// of them run.
MelSpectrogram SpecAugment(const MelSpectrogram &spec, const SpecAugmentSpec &policy);

}  // namespace speechaug

#endif  // SPEECHAUG_AUGMENT_H_
