// speechaug/audio_io.h

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

#ifndef SPEECHAUG_AUDIO_IO_H_
#define SPEECHAUG_AUDIO_IO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace speechaug {

/// Mono waveform. Samples are nominally in [-1, 1]; they are always finite
/// and the sample rate is always positive (checked on construction).
class AudioBuffer {
 public:
  AudioBuffer(std::vector<float> samples, int sample_rate_hz);

  const std::vector<float> &samples() const { return samples_; }
  std::span<const float> view() const { return samples_; }
  int sample_rate_hz() const { return sample_rate_hz_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double duration_s() const {
    return static_cast<double>(samples_.size()) / sample_rate_hz_;
  }

  bool operator==(const AudioBuffer &other) const = default;

 private:
  std::vector<float> samples_;
  int sample_rate_hz_;
};

enum class TokenKind { kWord, kPhoneme };

const char *TokenKindName(TokenKind kind);

struct UtteranceRecord {
  std::string id;
  std::string audio_path;
  std::vector<std::string> transcript;
  TokenKind kind = TokenKind::kWord;
  std::optional<double> duration_s;
  // Set by featurize / specaugment runs; not part of the reference data.
  std::optional<std::string> features_path;

  bool operator==(const UtteranceRecord &other) const = default;
};

// WAV: RIFF/WAVE, PCM (format 1), 16-bit, mono only.
AudioBuffer ParseWav(std::span<const uint8_t> bytes);
AudioBuffer ReadWav(const std::filesystem::path &path);

/// Canonical 44-byte header followed by the data chunk. Samples are
/// quantized as round(x * 32768) and saturated to the int16 range, the exact
/// inverse of the read mapping; the round-trip error is at most 1/32768.
std::vector<uint8_t> EncodeWav(const AudioBuffer &buffer);

/// Writes through a temporary file in the same directory and renames it, so
/// a partially written file never appears under `path`.
void WriteWav(const AudioBuffer &buffer, const std::filesystem::path &path);

/// Splits on runs of whitespace.
std::vector<std::string> Tokenize(const std::string &text);

/// JSON-lines manifest: one object per line with `id`, `audio`, `text` and
/// `kind` ("word" or "phoneme"), optionally `duration_s`. Blank lines are
/// skipped; ids must be unique and all records must share one kind.
std::vector<UtteranceRecord> ParseManifest(std::istream &in,
                                           const std::string &source_name);
std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path &path);

std::string ManifestLine(const UtteranceRecord &record);
void WriteManifest(const std::vector<UtteranceRecord> &records,
                   const std::filesystem::path &path);

/// Atomic whole-file write (temp file + rename).
void WriteFileAtomic(const std::filesystem::path &path,
                     std::span<const uint8_t> bytes);
void WriteFileAtomic(const std::filesystem::path &path,
                     const std::string &text);
std::vector<uint8_t> ReadFileBytes(const std::filesystem::path &path);

}  // namespace speechaug

#endif  // SPEECHAUG_AUDIO_IO_H_
