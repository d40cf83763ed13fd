// speechaug/augment.cc

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

#include "speechaug/augment.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "speechaug/errors.h"

namespace speechaug {

const char *FillModeName(FillMode mode) {
  return mode == FillMode::kFloor ? "floor" : "utterance_mean";
}

void SpecAugmentSpec::Validate() const {
  if (time_warp_w < 0 || freq_mask_f < 0 || n_freq_masks < 0 || time_mask_t < 0 ||
      n_time_masks < 0)
    throw Error(ErrorKind::kBadParams, "SpecAugment parameters must be nonnegative");
}

double DeriveNoiseStd(double signal_rms, double snr_db) {
  if (!std::isfinite(snr_db)) throw Error(ErrorKind::kBadParams, "snr_db must be finite");
  if (!(signal_rms >= 0.0) || !std::isfinite(signal_rms))
    throw Error(ErrorKind::kBadParams, "signal RMS must be finite and nonnegative");
  if (signal_rms == 0.0)
    throw Error(ErrorKind::kSilentSignal, "SNR is undefined for a silent signal");
  return signal_rms / std::pow(10.0, snr_db / 20.0);
}

NoiseResult AddGaussianNoise(const AudioBuffer &buffer, const NoiseSpec &spec) {
  if (buffer.empty()) throw Error(ErrorKind::kSilentSignal, "empty signal");
  const double sigma = DeriveNoiseStd(Rms(buffer), spec.snr_db);
  Rng rng(spec.seed);
  std::vector<float> out(buffer.size());
  std::size_t clipped = 0;
  const auto &in = buffer.samples();
  for (std::size_t i = 0; i < in.size(); ++i) {
    double y = static_cast<double>(in[i]) + sigma * rng.Gaussian();
    if (y > 1.0 || y < -1.0) {
      y = std::clamp(y, -1.0, 1.0);
      ++clipped;
    }
    out[i] = static_cast<float>(y);
  }
  return {AudioBuffer(std::move(out), buffer.sample_rate_hz()), clipped};
}

double PickSpeedFactor(const SpeedSpec &spec, std::string_view utterance_id) {
  if (spec.factors.empty())
    throw Error(ErrorKind::kBadParams, "speed factor set is empty");
  std::vector<double> factors = spec.factors;
  for (double f : factors) {
    if (!(f > 0.0) || !std::isfinite(f))
      throw Error(ErrorKind::kBadParams, "speed factors must be positive");
  }
  std::sort(factors.begin(), factors.end());
  factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
  Rng rng(UtteranceSeed(spec.seed, utterance_id));
  const auto idx = rng.UniformInt(0, static_cast<int64_t>(factors.size()) - 1);
  return factors[static_cast<std::size_t>(idx)];
}

AudioBuffer SpeedPerturb(const AudioBuffer &buffer, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorKind::kBadParams, "speed factor must be positive");
  if (buffer.empty()) throw Error(ErrorKind::kEmptySignal, "cannot perturb an empty signal");
  if (alpha == 1.0) return buffer;
  const auto out_len =
      static_cast<std::size_t>(std::llround(static_cast<double>(buffer.size()) / alpha));
  // Output sample n reads input position n * alpha.
  return AudioBuffer(ResampleByRatio(buffer.view(), 1.0 / alpha, out_len),
                     buffer.sample_rate_hz());
}

double FillValue(const MelSpectrogram &spec, FillMode mode) {
  return mode == FillMode::kFloor ? spec.floor_db : spec.Mean();
}

MelSpectrogram TimeWarp(const MelSpectrogram &spec, int max_warp, Rng &rng) {
  if (max_warp < 0) throw Error(ErrorKind::kBadParams, "time warp W must be nonnegative");
  const auto frames = static_cast<int64_t>(spec.num_frames());
  if (max_warp == 0 || frames <= 2 * static_cast<int64_t>(max_warp)) return spec;

  const int64_t center = rng.UniformInt(max_warp, frames - max_warp - 1);
  const int64_t shift = rng.UniformInt(-max_warp, max_warp);
  const int64_t dest = center + shift;  // in [0, frames - 1]
  const int64_t last = frames - 1;

  MelSpectrogram out = spec;
  const std::size_t channels = spec.num_channels();
  for (int64_t j = 0; j < frames; ++j) {
    double src;
    if (j == 0 || j == last) {
      src = static_cast<double>(j);
    } else if (j <= dest) {
      src = static_cast<double>(j * center) / static_cast<double>(dest);
    } else {
      src = static_cast<double>(center) +
            static_cast<double>((j - dest) * (last - center)) /
                static_cast<double>(last - dest);
    }
    auto lo = static_cast<int64_t>(std::floor(src));
    double frac = src - static_cast<double>(lo);
    if (lo >= last) {
      lo = last;
      frac = 0.0;
    }
    auto row = out.Frame(static_cast<std::size_t>(j));
    const auto a = spec.Frame(static_cast<std::size_t>(lo));
    if (frac == 0.0) {
      std::copy(a.begin(), a.end(), row.begin());
      continue;
    }
    const auto b = spec.Frame(static_cast<std::size_t>(lo + 1));
    // a + frac * (b - a) reproduces a constant field exactly.
    for (std::size_t m = 0; m < channels; ++m) row[m] = a[m] + frac * (b[m] - a[m]);
  }
  return out;
}

namespace {

enum class Axis { kFrequency, kTime };

MelSpectrogram ApplyMasks(const MelSpectrogram &spec, Axis axis, int max_width,
                          int num_masks, double fill_value, Rng &rng,
                          std::vector<MaskBand> *applied) {
  if (max_width < 0 || num_masks < 0)
    throw Error(ErrorKind::kBadParams, "mask parameters must be nonnegative");
  MelSpectrogram out = spec;
  const std::size_t extent =
      axis == Axis::kFrequency ? spec.num_channels() : spec.num_frames();
  const auto cap = std::min<int64_t>(max_width, static_cast<int64_t>(extent));
  for (int i = 0; i < num_masks; ++i) {
    const auto width = static_cast<std::size_t>(rng.UniformInt(0, cap));
    const auto start = static_cast<std::size_t>(
        rng.UniformInt(0, static_cast<int64_t>(extent - width)));
    if (applied) applied->push_back({start, width});
    if (axis == Axis::kFrequency) {
      for (std::size_t t = 0; t < out.num_frames(); ++t) {
        auto row = out.Frame(t);
        std::fill(row.begin() + start, row.begin() + start + width, fill_value);
      }
    } else {
      for (std::size_t t = start; t < start + width; ++t) {
        auto row = out.Frame(t);
        std::fill(row.begin(), row.end(), fill_value);
      }
    }
  }
  return out;
}

}  // namespace

MelSpectrogram FreqMask(const MelSpectrogram &spec, int max_width, int num_masks,
                        double fill_value, Rng &rng, std::vector<MaskBand> *applied) {
  return ApplyMasks(spec, Axis::kFrequency, max_width, num_masks, fill_value, rng,
                    applied);
}

MelSpectrogram TimeMask(const MelSpectrogram &spec, int max_width, int num_masks,
                        double fill_value, Rng &rng, std::vector<MaskBand> *applied) {
  return ApplyMasks(spec, Axis::kTime, max_width, num_masks, fill_value, rng, applied);
}

MelSpectrogram SpecAugment(const MelSpectrogram &spec, const SpecAugmentSpec &policy) {
  policy.Validate();
  const double fill = FillValue(spec, policy.fill);
  Rng rng(policy.seed);
  MelSpectrogram out = TimeWarp(spec, policy.time_warp_w, rng);
  out = FreqMask(out, policy.freq_mask_f, policy.n_freq_masks, fill, rng);
  out = TimeMask(out, policy.time_mask_t, policy.n_time_masks, fill, rng);
  return out;
}

}  // namespace speechaug
