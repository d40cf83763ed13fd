// speechaug/dsp.cc

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

#include "speechaug/dsp.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>
#include <numeric>
#include <string>

#include "speechaug/errors.h"

namespace speechaug {

namespace {

// Resampler design: Kaiser-windowed sinc, beta 8.6, 32 zero crossings on each
// side of the center tap.
constexpr double kKaiserBeta = 8.6;
constexpr double kZeroCrossings = 32.0;
// Cutoff as a fraction of the lower Nyquist rate. The Kaiser transition band
// is about 0.17 * cutoff wide, so this puts the stopband edge near Nyquist.
constexpr double kRolloff = 0.92;
constexpr int64_t kMaxRatioTerm = 1000;

constexpr char kDumpMagic[4] = {'L', 'M', 'E', 'L'};

double Sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

double Kaiser(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  static const double denom = std::cyl_bessel_i(0.0, kKaiserBeta);
  return std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - u * u)) / denom;
}

uint32_t LoadU32(const uint8_t *p) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

void PutU32(std::vector<uint8_t> *out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<uint8_t>(v >> (8 * i)));
}

}  // namespace

int FeatureParams::WindowSamples(int sample_rate_hz) const {
  return static_cast<int>(std::lround(window_s * sample_rate_hz));
}

int FeatureParams::HopSamples(int sample_rate_hz) const {
  return static_cast<int>(std::lround(hop_s * sample_rate_hz));
}

double FeatureParams::EffectiveFmax(int sample_rate_hz) const {
  return fmax_hz > 0.0 ? fmax_hz : sample_rate_hz / 2.0;
}

void FeatureParams::Validate(int sample_rate_hz) const {
  auto bad = [](const std::string &msg) { return Error(ErrorKind::kBadParams, msg); };
  if (sample_rate_hz <= 0) throw bad("sample rate must be positive");
  if (!(hop_s > 0.0) || !(window_s >= hop_s))
    throw bad("need window_s >= hop_s > 0");
  const int win = WindowSamples(sample_rate_hz);
  const int hop = HopSamples(sample_rate_hz);
  if (win < 1 || hop < 1) throw bad("window or hop rounds to zero samples");
  if (fft_size < win)
    throw bad("fft_size " + std::to_string(fft_size) +
              " is smaller than the window (" + std::to_string(win) + " samples)");
  if (!std::has_single_bit(static_cast<unsigned>(fft_size)))
    throw bad("fft_size must be a power of two");
  if (n_mels < 1) throw bad("n_mels must be at least 1");
  const double fmax = EffectiveFmax(sample_rate_hz);
  if (!(fmin_hz >= 0.0) || !(fmin_hz < fmax) || fmax > sample_rate_hz / 2.0)
    throw bad("need 0 <= fmin_hz < fmax_hz <= sample_rate / 2");
  if (!std::isfinite(floor_db)) throw bad("floor_db must be finite");
}

MelSpectrogram::MelSpectrogram(std::size_t num_frames, std::size_t num_channels,
                               double fill)
    : MelSpectrogram(num_frames, num_channels,
                     std::vector<double>(num_frames * num_channels, fill)) {}

MelSpectrogram::MelSpectrogram(std::size_t num_frames, std::size_t num_channels,
                               std::vector<double> values)
    : num_frames_(num_frames), num_channels_(num_channels), values_(std::move(values)) {
  if (num_channels_ == 0)
    throw Error(ErrorKind::kBadParams, "spectrogram needs at least one channel");
  if (values_.size() != num_frames_ * num_channels_)
    throw Error(ErrorKind::kBadParams, "value count does not match frames x channels");
}

double MelSpectrogram::Mean() const {
  if (values_.empty()) return floor_db;
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

double Rms(const AudioBuffer &buffer) {
  if (buffer.empty()) throw Error(ErrorKind::kEmptySignal, "RMS of an empty signal");
  double sum = 0.0;
  for (float x : buffer.samples()) sum += static_cast<double>(x) * x;
  return std::sqrt(sum / static_cast<double>(buffer.size()));
}

Fraction ApproximateRatio(double value, int64_t max_term) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw Error(ErrorKind::kBadParams, "ratio must be positive and finite");
  Fraction best{0, 1};
  double best_err = INFINITY;
  for (int64_t den = 1; den <= max_term; ++den) {
    const int64_t num = std::llround(value * static_cast<double>(den));
    if (num < 1 || num > max_term) continue;
    const double err = std::abs(static_cast<double>(num) / den - value);
    if (err < best_err) {
      best_err = err;
      best = {num, den};
      if (err == 0.0) break;
    }
  }
  if (best.num == 0)
    throw Error(ErrorKind::kBadParams,
                "resampling ratio " + std::to_string(value) + " out of range");
  const int64_t g = std::gcd(best.num, best.den);
  return {best.num / g, best.den / g};
}

std::vector<float> ResampleByRatio(std::span<const float> input, double ratio,
                                   std::size_t out_length) {
  if (input.empty()) throw Error(ErrorKind::kEmptySignal, "cannot resample an empty signal");
  const Fraction frac = ApproximateRatio(ratio, kMaxRatioTerm);
  const int64_t up = frac.num;    // output steps per ...
  const int64_t down = frac.den;  // ... this many input steps
  std::vector<float> out(out_length, 0.0f);

  if (up == down) {
    std::copy_n(input.begin(), std::min(input.size(), out_length), out.begin());
    return out;
  }

  // Cutoff relative to the input Nyquist frequency.
  const double cutoff = kRolloff * std::min(1.0, static_cast<double>(up) / down);
  const double half_width = kZeroCrossings / cutoff;  // in input samples
  const auto taps_per_side = static_cast<int64_t>(std::ceil(half_width));
  const int64_t num_taps = 2 * taps_per_side;

  // Output sample n sits at input position (n * down) / up. The fractional
  // part only takes `up` distinct values, one filter phase each.
  std::vector<double> table(static_cast<std::size_t>(up * num_taps));
  for (int64_t phase = 0; phase < up; ++phase) {
    const double offset = static_cast<double>(phase) / up;
    double *coeffs = &table[static_cast<std::size_t>(phase * num_taps)];
    double sum = 0.0;
    for (int64_t j = 0; j < num_taps; ++j) {
      const double x = static_cast<double>(j - taps_per_side + 1) - offset;
      coeffs[j] = cutoff * Sinc(cutoff * x) * Kaiser(x / half_width);
      sum += coeffs[j];
    }
    for (int64_t j = 0; j < num_taps; ++j) coeffs[j] /= sum;  // unity DC gain
  }

  const auto n_in = static_cast<int64_t>(input.size());
  for (std::size_t n = 0; n < out_length; ++n) {
    const int64_t pos = static_cast<int64_t>(n) * down;
    const int64_t base = pos / up;
    const int64_t phase = pos % up;
    const double *coeffs = &table[static_cast<std::size_t>(phase * num_taps)];
    const int64_t first = base - taps_per_side + 1;
    const int64_t lo = std::max<int64_t>(0, -first);
    const int64_t hi = std::min<int64_t>(num_taps, n_in - first);
    double acc = 0.0;
    for (int64_t j = lo; j < hi; ++j) acc += coeffs[j] * input[first + j];
    out[n] = static_cast<float>(acc);
  }
  return out;
}

AudioBuffer Resample(const AudioBuffer &buffer, int out_rate_hz) {
  if (out_rate_hz <= 0)
    throw Error(ErrorKind::kBadParams, "output rate must be positive");
  if (buffer.empty()) throw Error(ErrorKind::kEmptySignal, "cannot resample an empty signal");
  const int in_rate = buffer.sample_rate_hz();
  if (in_rate == out_rate_hz) return buffer;

  const auto out_len = static_cast<std::size_t>(
      (static_cast<int64_t>(buffer.size()) * out_rate_hz + in_rate / 2) / in_rate);
  const int64_t g = std::gcd<int64_t>(in_rate, out_rate_hz);
  const int64_t up = out_rate_hz / g;
  const int64_t down = in_rate / g;
  // An exactly representable pair goes through unchanged; otherwise the
  // ratio is approximated.
  const double ratio = static_cast<double>(up) / static_cast<double>(down);
  return AudioBuffer(ResampleByRatio(buffer.view(), ratio, out_len), out_rate_hz);
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank::MelFilterbank(int n_mels, int fft_size, int sample_rate_hz,
                             double fmin_hz, double fmax_hz) {
  if (n_mels < 1 || fft_size < 2 || sample_rate_hz <= 0 || !(fmin_hz < fmax_hz))
    throw Error(ErrorKind::kBadParams, "invalid mel filterbank configuration");
  const double mel_lo = HzToMel(fmin_hz);
  const double mel_hi = HzToMel(fmax_hz);
  const double step = (mel_hi - mel_lo) / (n_mels + 1);
  const int num_bins = fft_size / 2 + 1;
  const double bin_hz = static_cast<double>(sample_rate_hz) / fft_size;

  std::vector<double> bin_mel(num_bins);
  for (int k = 0; k < num_bins; ++k) bin_mel[k] = HzToMel(k * bin_hz);

  filters_.resize(n_mels);
  centers_hz_.resize(n_mels);
  for (int m = 0; m < n_mels; ++m) {
    const double left = mel_lo + m * step;
    const double center = left + step;
    const double right = center + step;
    centers_hz_[m] = MelToHz(center);
    Filter &f = filters_[m];
    f.first_bin = -1;
    for (int k = 0; k < num_bins; ++k) {
      const double mel = bin_mel[k];
      double w = 0.0;
      if (mel > left && mel <= center) {
        w = (mel - left) / (center - left);
      } else if (mel > center && mel < right) {
        w = (right - mel) / (right - center);
      }
      if (w > 0.0) {
        if (f.first_bin < 0) f.first_bin = k;
        f.weights.resize(k - f.first_bin + 1, 0.0);
        f.weights.back() = w;
      }
    }
    if (f.first_bin < 0) f.first_bin = 0;
  }
}

void MelFilterbank::Apply(std::span<const double> power, std::span<double> out) const {
  for (std::size_t m = 0; m < filters_.size(); ++m) {
    const Filter &f = filters_[m];
    double e = 0.0;
    for (std::size_t j = 0; j < f.weights.size(); ++j)
      e += f.weights[j] * power[f.first_bin + j];
    out[m] = e;
  }
}

double MelFilterbank::Weight(int filter, int bin) const {
  const Filter &f = filters_.at(filter);
  const int j = bin - f.first_bin;
  if (j < 0 || j >= static_cast<int>(f.weights.size())) return 0.0;
  return f.weights[j];
}

void Fft(std::span<std::complex<double>> data) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  if (!std::has_single_bit(n))
    throw Error(ErrorKind::kBadParams, "FFT size must be a power of two");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  // Twiddles computed directly rather than by recurrence so long transforms
  // do not accumulate rounding error.
  std::vector<std::complex<double>> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k)
    twiddle[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) /
                                     static_cast<double>(n));
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> a = data[i + k];
        const std::complex<double> b = data[i + k + len / 2] * twiddle[k * stride];
        data[i + k] = a + b;
        data[i + k + len / 2] = a - b;
      }
    }
  }
}

std::vector<double> HannWindow(int length) {
  std::vector<double> w(length);
  for (int i = 0; i < length; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / length);
  return w;
}

std::size_t NumFrames(std::size_t num_samples, int window_samples, int hop_samples) {
  const auto win = static_cast<std::size_t>(window_samples);
  if (num_samples < win) return 0;
  return 1 + (num_samples - win) / static_cast<std::size_t>(hop_samples);
}

MelSpectrogram ComputeLogMel(const AudioBuffer &buffer, const FeatureParams &params) {
  const int rate = buffer.sample_rate_hz();
  params.Validate(rate);
  const int win = params.WindowSamples(rate);
  const int hop = params.HopSamples(rate);
  if (buffer.size() < static_cast<std::size_t>(win))
    throw Error(ErrorKind::kSignalTooShort,
                std::to_string(buffer.size()) + " samples is shorter than one " +
                    std::to_string(win) + "-sample window");

  const double fmax = params.EffectiveFmax(rate);
  const MelFilterbank bank(params.n_mels, params.fft_size, rate, params.fmin_hz, fmax);
  const std::vector<double> window = HannWindow(win);
  const std::size_t frames = NumFrames(buffer.size(), win, hop);
  const int num_bins = params.fft_size / 2 + 1;

  MelSpectrogram out(frames, static_cast<std::size_t>(params.n_mels), params.floor_db);
  out.frame_hop_s = params.hop_s;
  out.window_s = params.window_s;
  out.sample_rate_hz = rate;
  out.fmin_hz = params.fmin_hz;
  out.fmax_hz = fmax;
  out.floor_db = params.floor_db;

  std::vector<std::complex<double>> spectrum(params.fft_size);
  std::vector<double> power(num_bins);
  std::vector<double> energies(params.n_mels);
  const auto &samples = buffer.samples();
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t start = t * static_cast<std::size_t>(hop);
    std::fill(spectrum.begin(), spectrum.end(), std::complex<double>());
    for (int i = 0; i < win; ++i) spectrum[i] = samples[start + i] * window[i];
    Fft(spectrum);
    for (int k = 0; k < num_bins; ++k) power[k] = std::norm(spectrum[k]);
    bank.Apply(power, energies);
    auto row = out.Frame(t);
    for (int m = 0; m < params.n_mels; ++m) {
      const double e = energies[m];
      row[m] = e > 0.0 ? std::max(10.0 * std::log10(e), params.floor_db) : params.floor_db;
    }
  }
  return out;
}

std::vector<uint8_t> EncodeMelDump(const MelSpectrogram &spec) {
  if (spec.num_frames() > UINT32_MAX || spec.num_channels() > UINT32_MAX)
    throw Error(ErrorKind::kBadParams, "spectrogram too large for a dump file");
  std::vector<uint8_t> out;
  out.reserve(16 + 4 * spec.values().size());
  out.insert(out.end(), kDumpMagic, kDumpMagic + 4);
  PutU32(&out, static_cast<uint32_t>(spec.num_frames()));
  PutU32(&out, static_cast<uint32_t>(spec.num_channels()));
  PutU32(&out, 0);
  for (double v : spec.values())
    PutU32(&out, std::bit_cast<uint32_t>(static_cast<float>(v)));
  return out;
}

MelSpectrogram DecodeMelDump(std::span<const uint8_t> bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kDumpMagic, 4) != 0)
    throw Error(ErrorKind::kMalformedDump, "missing feature dump header");
  const uint64_t frames = LoadU32(bytes.data() + 4);
  const uint64_t channels = LoadU32(bytes.data() + 8);
  if (channels == 0) throw Error(ErrorKind::kMalformedDump, "zero channels");
  if (bytes.size() - 16 != frames * channels * 4)
    throw Error(ErrorKind::kMalformedDump, "payload size does not match header");
  std::vector<double> values(frames * channels);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const float v = std::bit_cast<float>(LoadU32(bytes.data() + 16 + 4 * i));
    if (!std::isfinite(v)) throw Error(ErrorKind::kMalformedDump, "non-finite value");
    values[i] = v;
  }
  return MelSpectrogram(frames, channels, std::move(values));
}

void WriteMelDump(const MelSpectrogram &spec, const std::filesystem::path &path) {
  WriteFileAtomic(path, EncodeMelDump(spec));
}

MelSpectrogram ReadMelDump(const std::filesystem::path &path) {
  return DecodeMelDump(ReadFileBytes(path));
}

}  // namespace speechaug
