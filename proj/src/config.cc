// speechaug/config.cc

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

#include "speechaug/config.h"

#include <cctype>
#include <charconv>
#include <climits>
#include <fstream>
#include <sstream>

#include "speechaug/errors.h"

namespace speechaug {

namespace {

std::string Trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool IsNumberLiteral(const std::string &s) {
  if (s.empty()) return false;
  double v;
  const char *end = s.data() + s.size();
  const char *begin = s.data() + (s[0] == '+' ? 1 : 0);
  auto [ptr, ec] = std::from_chars(begin, end, v);
  return ec == std::errc() && ptr == end;
}

bool IsBareKey(const std::string &s) {
  if (s.empty()) return false;
  for (unsigned char c : s)
    if (!std::isalnum(c) && c != '_' && c != '-') return false;
  return true;
}

// Drops a trailing comment, respecting quoted strings.
std::string StripComment(const std::string &line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

}  // namespace

ConfigFile ConfigFile::Parse(const std::string &text, const std::string &source_name) {
  ConfigFile cfg;
  cfg.source_name_ = source_name;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  ConfigSection *current = nullptr;
  auto fail = [&](const std::string &msg) {
    return Error(ErrorKind::kConfig, source_name + ":" + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = Trim(StripComment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw fail("unterminated section header");
      const std::string name = Trim(line.substr(1, line.size() - 2));
      if (!IsBareKey(name)) throw fail("bad section name '" + name + "'");
      if (name != "augment" && name != "features" && name != "score")
        throw fail("unknown section [" + name + "]");
      if (cfg.sections_.count(name)) throw fail("section [" + name + "] repeated");
      current = &cfg.sections_[name];
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw fail("expected key = value");
    const std::string key = Trim(line.substr(0, eq));
    const std::string rhs = Trim(line.substr(eq + 1));
    if (!IsBareKey(key)) throw fail("bad key '" + key + "'");
    if (!current) throw fail("key '" + key + "' outside of any section");
    if (current->count(key)) throw fail("duplicate key '" + key + "'");
    if (rhs.empty()) throw fail("missing value for '" + key + "'");

    ConfigValue value;
    value.line = line_no;
    if (rhs.front() == '"') {
      value.type = ConfigValue::Type::kString;
      std::size_t i = 1;
      for (; i < rhs.size() && rhs[i] != '"'; ++i) {
        if (rhs[i] == '\\') {
          if (++i >= rhs.size()) break;
          switch (rhs[i]) {
            case 'n': value.text += '\n'; break;
            case 't': value.text += '\t'; break;
            case '"': value.text += '"'; break;
            case '\\': value.text += '\\'; break;
            default: throw fail("unsupported escape in string");
          }
        } else {
          value.text += rhs[i];
        }
      }
      if (i >= rhs.size() || i + 1 != rhs.size()) throw fail("malformed string value");
    } else if (rhs.front() == '[') {
      value.type = ConfigValue::Type::kArray;
      if (rhs.back() != ']') throw fail("arrays must close on the same line");
      std::string item;
      std::istringstream items(rhs.substr(1, rhs.size() - 2));
      while (std::getline(items, item, ',')) {
        item = Trim(item);
        if (item.empty()) continue;  // trailing comma
        if (!IsNumberLiteral(item)) throw fail("array items must be numbers");
        value.items.push_back(item);
      }
    } else if (rhs == "true" || rhs == "false") {
      value.type = ConfigValue::Type::kBool;
      value.text = rhs;
    } else {
      if (!IsNumberLiteral(rhs)) throw fail("cannot parse value '" + rhs + "'");
      value.type = ConfigValue::Type::kNumber;
      value.text = rhs;
    }
    (*current)[key] = std::move(value);
  }
  return cfg;
}

ConfigFile ConfigFile::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfig, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return Parse(text.str(), path.string());
}

const ConfigSection *ConfigFile::Section(const std::string &name) const {
  auto it = sections_.find(name);
  return it == sections_.end() ? nullptr : &it->second;
}

namespace {

class SectionReader {
 public:
  SectionReader(const ConfigFile &cfg, const std::string &name)
      : cfg_(cfg), name_(name), section_(cfg.Section(name)) {}

  bool Has(const std::string &key) const { return section_ && section_->count(key); }

  double Number(const std::string &key) const {
    const ConfigValue &v = Get(key, ConfigValue::Type::kNumber);
    return ParseDouble(v.text, v);
  }

  int Int(const std::string &key) const {
    const ConfigValue &v = Get(key, ConfigValue::Type::kNumber);
    long long out;
    const char *begin = v.text.data() + (v.text[0] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(begin, v.text.data() + v.text.size(), out);
    if (ec != std::errc() || ptr != v.text.data() + v.text.size() || out < INT_MIN ||
        out > INT_MAX)
      throw Fail(v, "'" + key + "' must be an integer");
    return static_cast<int>(out);
  }

  uint64_t U64(const std::string &key) const {
    const ConfigValue &v = Get(key, ConfigValue::Type::kNumber);
    uint64_t out;
    const char *begin = v.text.data() + (v.text[0] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(begin, v.text.data() + v.text.size(), out);
    if (ec != std::errc() || ptr != v.text.data() + v.text.size())
      throw Fail(v, "'" + key + "' must be an unsigned 64-bit integer");
    return out;
  }

  bool Bool(const std::string &key) const {
    return Get(key, ConfigValue::Type::kBool).text == "true";
  }

  std::string String(const std::string &key) const {
    return Get(key, ConfigValue::Type::kString).text;
  }

  std::vector<double> Numbers(const std::string &key) const {
    const ConfigValue &v = Get(key, ConfigValue::Type::kArray);
    std::vector<double> out;
    for (const auto &item : v.items) out.push_back(ParseDouble(item, v));
    return out;
  }

  void RejectUnknown(std::initializer_list<const char *> known) const {
    if (!section_) return;
    for (const auto &[key, value] : *section_) {
      bool ok = false;
      for (const char *k : known) ok = ok || key == k;
      if (!ok) throw Fail(value, "unknown key '" + key + "' in [" + name_ + "]");
    }
  }

 private:
  Error Fail(const ConfigValue &v, const std::string &msg) const {
    return Error(ErrorKind::kConfig,
                 cfg_.source_name() + ":" + std::to_string(v.line) + ": " + msg);
  }

  const ConfigValue &Get(const std::string &key, ConfigValue::Type type) const {
    const ConfigValue &v = section_->at(key);
    if (v.type != type) throw Fail(v, "wrong value type for '" + key + "'");
    return v;
  }

  double ParseDouble(const std::string &text, const ConfigValue &v) const {
    double out;
    const char *begin = text.data() + (text[0] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), out);
    if (ec != std::errc()) throw Fail(v, "bad number '" + text + "'");
    return out;
  }

  const ConfigFile &cfg_;
  std::string name_;
  const ConfigSection *section_;
};

std::string ShortestDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

void ApplyAugmentSection(const ConfigFile &config, AugmentationSpec *spec) {
  SectionReader r(config, "augment");
  r.RejectUnknown({"snr_db", "factors", "time_warp_w", "freq_mask_f", "n_freq_masks",
                   "time_mask_t", "n_time_masks", "fill", "seed"});
  if (r.Has("snr_db")) spec->noise.snr_db = r.Number("snr_db");
  if (r.Has("factors")) spec->speed.factors = r.Numbers("factors");
  if (r.Has("time_warp_w")) spec->spec_augment.time_warp_w = r.Int("time_warp_w");
  if (r.Has("freq_mask_f")) spec->spec_augment.freq_mask_f = r.Int("freq_mask_f");
  if (r.Has("n_freq_masks")) spec->spec_augment.n_freq_masks = r.Int("n_freq_masks");
  if (r.Has("time_mask_t")) spec->spec_augment.time_mask_t = r.Int("time_mask_t");
  if (r.Has("n_time_masks")) spec->spec_augment.n_time_masks = r.Int("n_time_masks");
  if (r.Has("fill")) {
    const std::string fill = r.String("fill");
    if (fill == "floor") {
      spec->spec_augment.fill = FillMode::kFloor;
    } else if (fill == "utterance_mean") {
      spec->spec_augment.fill = FillMode::kUtteranceMean;
    } else {
      throw Error(ErrorKind::kConfig, "fill must be \"floor\" or \"utterance_mean\"");
    }
  }
  if (r.Has("seed")) {
    const uint64_t seed = r.U64("seed");
    spec->noise.seed = spec->speed.seed = spec->spec_augment.seed = seed;
  }
}

void ApplyFeatureSection(const ConfigFile &config, FeatureParams *params) {
  SectionReader r(config, "features");
  r.RejectUnknown(
      {"window_s", "hop_s", "fft_size", "n_mels", "fmin_hz", "fmax_hz", "floor_db"});
  if (r.Has("window_s")) params->window_s = r.Number("window_s");
  if (r.Has("hop_s")) params->hop_s = r.Number("hop_s");
  if (r.Has("fft_size")) params->fft_size = r.Int("fft_size");
  if (r.Has("n_mels")) params->n_mels = r.Int("n_mels");
  if (r.Has("fmin_hz")) params->fmin_hz = r.Number("fmin_hz");
  if (r.Has("fmax_hz")) params->fmax_hz = r.Number("fmax_hz");
  if (r.Has("floor_db")) params->floor_db = r.Number("floor_db");
}

void ApplyScoreSection(const ConfigFile &config, bool *lowercase) {
  SectionReader r(config, "score");
  r.RejectUnknown({"lowercase"});
  if (r.Has("lowercase")) *lowercase = r.Bool("lowercase");
}

std::string AugmentSectionToToml(const AugmentationSpec &spec) {
  std::ostringstream out;
  const SpecAugmentSpec &sa = spec.spec_augment;
  out << "[augment]\n";
  out << "snr_db = " << ShortestDouble(spec.noise.snr_db) << "\n";
  out << "factors = [";
  for (std::size_t i = 0; i < spec.speed.factors.size(); ++i)
    out << (i ? ", " : "") << ShortestDouble(spec.speed.factors[i]);
  out << "]\n";
  out << "time_warp_w = " << sa.time_warp_w << "\n";
  out << "freq_mask_f = " << sa.freq_mask_f << "\n";
  out << "n_freq_masks = " << sa.n_freq_masks << "\n";
  out << "time_mask_t = " << sa.time_mask_t << "\n";
  out << "n_time_masks = " << sa.n_time_masks << "\n";
  out << "fill = \"" << FillModeName(sa.fill) << "\"\n";
  out << "seed = " << spec.noise.seed << "\n";
  return out.str();
}

}  // namespace speechaug
