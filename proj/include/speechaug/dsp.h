// speechaug/dsp.h

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

#ifndef SPEECHAUG_DSP_H_
#define SPEECHAUG_DSP_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "speechaug/audio_io.h"

namespace speechaug {

/// Log-mel feature front-end settings. Zero for fmax_hz means Nyquist.
struct FeatureParams {
  double window_s = 0.025;
  double hop_s = 0.010;
  int fft_size = 512;
  int n_mels = 80;
  double fmin_hz = 0.0;
  double fmax_hz = 0.0;
  double floor_db = -100.0;

  int WindowSamples(int sample_rate_hz) const;
  int HopSamples(int sample_rate_hz) const;
  double EffectiveFmax(int sample_rate_hz) const;
  /// Throws BadParams if the settings are inconsistent for this rate.
  void Validate(int sample_rate_hz) const;
};

/// Time x mel grid of log energies in dB, stored row-major by frame:
/// value(t, m) lives at values[t * num_channels + m].
class MelSpectrogram {
 public:
  MelSpectrogram() = default;
  MelSpectrogram(std::size_t num_frames, std::size_t num_channels,
                 double fill = 0.0);
  MelSpectrogram(std::size_t num_frames, std::size_t num_channels,
                 std::vector<double> values);

  std::size_t num_frames() const { return num_frames_; }
  std::size_t num_channels() const { return num_channels_; }

  double operator()(std::size_t frame, std::size_t channel) const {
    return values_[frame * num_channels_ + channel];
  }
  double &operator()(std::size_t frame, std::size_t channel) {
    return values_[frame * num_channels_ + channel];
  }
  std::span<const double> Frame(std::size_t frame) const {
    return {values_.data() + frame * num_channels_, num_channels_};
  }
  std::span<double> Frame(std::size_t frame) {
    return {values_.data() + frame * num_channels_, num_channels_};
  }
  const std::vector<double> &values() const { return values_; }
  std::vector<double> &values() { return values_; }

  double Mean() const;

  // Acquisition metadata. Defaults describe the standard front-end.
  double frame_hop_s = 0.010;
  double window_s = 0.025;
  int sample_rate_hz = 16000;
  double fmin_hz = 0.0;
  double fmax_hz = 8000.0;
  double floor_db = -100.0;

  bool operator==(const MelSpectrogram &other) const = default;

 private:
  std::size_t num_frames_ = 0;
  std::size_t num_channels_ = 1;
  std::vector<double> values_;
};

double Rms(const AudioBuffer &buffer);

/// Band-limited resampling to `out_rate_hz` (windowed-sinc polyphase filter).
/// Identity when the rates already match.
AudioBuffer Resample(const AudioBuffer &buffer, int out_rate_hz);

/// Resamples `input` so that output sample n corresponds to input position
/// n / ratio, producing exactly `out_length` samples. The ratio is realized
/// as a fraction with denominator at most 1000 and the anti-alias cutoff
/// follows min(1, ratio) of the input Nyquist.
std::vector<float> ResampleByRatio(std::span<const float> input, double ratio,
                                   std::size_t out_length);

struct Fraction {
  int64_t num = 1;
  int64_t den = 1;
};

/// Best rational approximation with both terms at most `max_term`.
Fraction ApproximateRatio(double value, int64_t max_term = 1000);

double HzToMel(double hz);
double MelToHz(double mel);

/// Triangular filters equally spaced on the mel scale, evaluated on the
/// bins of an fft_size-point real transform.
class MelFilterbank {
 public:
  MelFilterbank(int n_mels, int fft_size, int sample_rate_hz, double fmin_hz,
                double fmax_hz);

  int num_filters() const { return static_cast<int>(filters_.size()); }
  /// Filter center frequencies in Hz.
  const std::vector<double> &centers_hz() const { return centers_hz_; }
  /// Applies the filterbank to a power spectrum of fft_size / 2 + 1 bins.
  void Apply(std::span<const double> power, std::span<double> out) const;
  double Weight(int filter, int bin) const;

 private:
  struct Filter {
    int first_bin = 0;
    std::vector<double> weights;
  };
  std::vector<Filter> filters_;
  std::vector<double> centers_hz_;
};

/// In-place radix-2 complex FFT; size must be a power of two.
void Fft(std::span<std::complex<double>> data);

/// Periodic Hann window of the given length.
std::vector<double> HannWindow(int length);

/// Number of frames for `num_samples`: 1 + (N - win) / hop, or 0 if N < win.
std::size_t NumFrames(std::size_t num_samples, int window_samples,
                      int hop_samples);

MelSpectrogram ComputeLogMel(const AudioBuffer &buffer,
                             const FeatureParams &params);

// Feature dump: 16-byte header ("LMEL", frames, channels, reserved; all
// little-endian uint32) followed by frames * channels little-endian float32
// values, row-major by frame.
std::vector<uint8_t> EncodeMelDump(const MelSpectrogram &spec);
MelSpectrogram DecodeMelDump(std::span<const uint8_t> bytes);
void WriteMelDump(const MelSpectrogram &spec, const std::filesystem::path &path);
MelSpectrogram ReadMelDump(const std::filesystem::path &path);

}  // namespace speechaug

#endif  // SPEECHAUG_DSP_H_
