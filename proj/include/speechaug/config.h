// speechaug/config.h

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

// Reader for the small TOML subset used by run configs:
//
//   # comment
//   [augment]
//   snr_db = 10
//   factors = [0.5, 0.9, 1.0, 1.1, 1.5]
//   fill = "utterance_mean"
//
// Sections, `key = value` pairs, numbers, booleans, basic strings and flat
// arrays of numbers. Nothing else (no tables-in-arrays, no dotted keys).

#ifndef SPEECHAUG_CONFIG_H_
#define SPEECHAUG_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "speechaug/augment.h"
#include "speechaug/dsp.h"

namespace speechaug {

struct ConfigValue {
  enum class Type { kNumber, kString, kBool, kArray };
  Type type = Type::kNumber;
  std::string text;                // number literal, string contents, true/false
  std::vector<std::string> items;  // number literals, for arrays
  int line = 0;
};

using ConfigSection = std::map<std::string, ConfigValue>;

class ConfigFile {
 public:
  static ConfigFile Parse(const std::string &text, const std::string &source_name);
  static ConfigFile Load(const std::filesystem::path &path);

  bool HasSection(const std::string &name) const { return sections_.count(name) > 0; }
  const ConfigSection *Section(const std::string &name) const;
  const std::string &source_name() const { return source_name_; }

 private:
  std::string source_name_;
  std::map<std::string, ConfigSection> sections_;
};

/// Overwrites fields of `spec` with the keys present in [augment]: snr_db,
/// factors, time_warp_w, freq_mask_f, n_freq_masks, time_mask_t,
/// n_time_masks, fill, seed. Unknown keys are a ConfigError.
void ApplyAugmentSection(const ConfigFile &config, AugmentationSpec *spec);
/// [features]: window_s, hop_s, fft_size, n_mels, fmin_hz, fmax_hz, floor_db.
void ApplyFeatureSection(const ConfigFile &config, FeatureParams *params);
/// [score]: lowercase.
void ApplyScoreSection(const ConfigFile &config, bool *lowercase);

/// Emits an [augment] section that ApplyAugmentSection reads back exactly.
/// The noise, speed and SpecAugment seeds are written as the single `seed`
/// key (taken from the noise spec).
std::string AugmentSectionToToml(const AugmentationSpec &spec);

}  // namespace speechaug

#endif  // SPEECHAUG_CONFIG_H_
