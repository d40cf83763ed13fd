// speechaug/audio_io.cc

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

#include "speechaug/audio_io.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "speechaug/errors.h"

namespace speechaug {

const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedWav: return "MalformedWav";
    case ErrorKind::kMalformedDump: return "MalformedDump";
    case ErrorKind::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kManifestParse: return "ManifestParse";
    case ErrorKind::kEmptySignal: return "EmptySignal";
    case ErrorKind::kSignalTooShort: return "SignalTooShort";
    case ErrorKind::kBadParams: return "BadParams";
    case ErrorKind::kSilentSignal: return "SilentSignal";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kMissingHypothesis: return "MissingHypothesis";
    case ErrorKind::kConfig: return "ConfigError";
  }
  return "Error";
}

AudioBuffer::AudioBuffer(std::vector<float> samples, int sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (sample_rate_hz_ <= 0)
    throw Error(ErrorKind::kBadParams,
                "sample rate must be positive, got " +
                    std::to_string(sample_rate_hz_));
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i]))
      throw Error(ErrorKind::kBadParams,
                  "non-finite sample at index " + std::to_string(i));
  }
}

const char *TokenKindName(TokenKind kind) {
  return kind == TokenKind::kWord ? "word" : "phoneme";
}

namespace {

uint16_t LoadU16(const uint8_t *p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t LoadU32(const uint8_t *p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<uint8_t> *out, uint16_t v) {
  out->push_back(static_cast<uint8_t>(v & 0xff));
  out->push_back(static_cast<uint8_t>(v >> 8));
}

void PutU32(std::vector<uint8_t> *out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void PutTag(std::vector<uint8_t> *out, const char *tag) {
  out->insert(out->end(), tag, tag + 4);
}

std::atomic<uint64_t> temp_counter{0};

std::filesystem::path TempPathFor(const std::filesystem::path &path) {
  std::ostringstream name;
  name << path.filename().string() << ".tmp." << ::getpid() << "."
       << temp_counter.fetch_add(1);
  return path.parent_path() / name.str();
}

}  // namespace

AudioBuffer ParseWav(std::span<const uint8_t> bytes) {
  if (bytes.size() < 12)
    throw Error(ErrorKind::kMalformedWav, "file shorter than RIFF header");
  if (std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error(ErrorKind::kMalformedWav, "missing RIFF/WAVE magic");

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  std::span<const uint8_t> data;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < 8)
      throw Error(ErrorKind::kMalformedWav, "truncated chunk header");
    const uint8_t *hdr = bytes.data() + pos;
    const uint32_t chunk_size = LoadU32(hdr + 4);
    pos += 8;
    if (chunk_size > bytes.size() - pos)
      throw Error(ErrorKind::kMalformedWav,
                  "chunk '" + std::string(reinterpret_cast<const char *>(hdr), 4) +
                      "' runs past end of file");
    const uint8_t *body = bytes.data() + pos;
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_size < 16)
        throw Error(ErrorKind::kMalformedWav, "fmt chunk too small");
      format = LoadU16(body);
      channels = LoadU16(body + 2);
      rate = LoadU32(body + 4);
      bits = LoadU16(body + 14);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.subspan(pos, chunk_size);
      have_data = true;
    }
    // Chunks are word aligned; a missing final pad byte is tolerated.
    pos += chunk_size + (chunk_size & 1u);
  }

  if (!have_fmt) throw Error(ErrorKind::kMalformedWav, "no fmt chunk");
  if (!have_data) throw Error(ErrorKind::kMalformedWav, "no data chunk");
  if (format != 1)
    throw Error(ErrorKind::kUnsupportedFormat,
                "audio format " + std::to_string(format) + " is not PCM");
  if (channels != 1)
    throw Error(ErrorKind::kUnsupportedFormat,
                std::to_string(channels) + " channels; only mono is supported");
  if (bits != 16)
    throw Error(ErrorKind::kUnsupportedFormat,
                std::to_string(bits) + "-bit samples; only 16-bit is supported");
  if (rate == 0 || rate > static_cast<uint32_t>(INT32_MAX))
    throw Error(ErrorKind::kMalformedWav, "invalid sample rate");
  if (data.size() % 2 != 0)
    throw Error(ErrorKind::kMalformedWav, "data chunk is not a whole number of frames");

  std::vector<float> samples(data.size() / 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto v = static_cast<int16_t>(LoadU16(data.data() + 2 * i));
    samples[i] = static_cast<float>(v) / 32768.0f;
  }
  return AudioBuffer(std::move(samples), static_cast<int>(rate));
}

std::vector<uint8_t> ReadFileBytes(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::kIo, "read failed for " + path.string());
  return bytes;
}

AudioBuffer ReadWav(const std::filesystem::path &path) {
  const auto bytes = ReadFileBytes(path);
  return ParseWav(bytes);
}

std::vector<uint8_t> EncodeWav(const AudioBuffer &buffer) {
  const uint64_t data_bytes = 2ull * buffer.size();
  if (data_bytes > UINT32_MAX - 36)
    throw Error(ErrorKind::kIo, "buffer too long for a RIFF file");
  const auto rate = static_cast<uint32_t>(buffer.sample_rate_hz());

  std::vector<uint8_t> out;
  out.reserve(44 + data_bytes);
  PutTag(&out, "RIFF");
  PutU32(&out, static_cast<uint32_t>(36 + data_bytes));
  PutTag(&out, "WAVE");
  PutTag(&out, "fmt ");
  PutU32(&out, 16);
  PutU16(&out, 1);         // PCM
  PutU16(&out, 1);         // mono
  PutU32(&out, rate);
  PutU32(&out, rate * 2);  // byte rate
  PutU16(&out, 2);         // block align
  PutU16(&out, 16);
  PutTag(&out, "data");
  PutU32(&out, static_cast<uint32_t>(data_bytes));
  for (float x : buffer.samples()) {
    double q = std::round(static_cast<double>(x) * 32768.0);
    q = std::clamp(q, -32768.0, 32767.0);
    PutU16(&out, static_cast<uint16_t>(static_cast<int16_t>(q)));
  }
  return out;
}

void WriteFileAtomic(const std::filesystem::path &path,
                     std::span<const uint8_t> bytes) {
  const auto tmp = TempPathFor(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot create " + tmp.string());
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorKind::kIo, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::kIo, "cannot rename into " + path.string());
  }
}

void WriteFileAtomic(const std::filesystem::path &path, const std::string &text) {
  WriteFileAtomic(path, std::span<const uint8_t>(
                            reinterpret_cast<const uint8_t *>(text.data()),
                            text.size()));
}

void WriteWav(const AudioBuffer &buffer, const std::filesystem::path &path) {
  WriteFileAtomic(path, EncodeWav(buffer));
}

std::vector<std::string> Tokenize(const std::string &text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) tokens.push_back(std::move(tok));
  return tokens;
}

std::vector<UtteranceRecord> ParseManifest(std::istream &in,
                                           const std::string &source_name) {
  std::vector<UtteranceRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string &msg) -> Error {
    return Error(ErrorKind::kManifestParse,
                 source_name + ":" + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw fail(std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object()) throw fail("record is not a JSON object");
    for (const char *key : {"id", "audio", "text", "kind"}) {
      if (!j.contains(key)) throw fail(std::string("missing field '") + key + "'");
      if (!j[key].is_string())
        throw fail(std::string("field '") + key + "' must be a string");
    }

    UtteranceRecord rec;
    rec.id = j["id"].get<std::string>();
    if (rec.id.empty()) throw fail("empty id");
    if (!seen.insert(rec.id).second) throw fail("duplicate id '" + rec.id + "'");
    rec.audio_path = j["audio"].get<std::string>();
    rec.transcript = Tokenize(j["text"].get<std::string>());
    const auto kind = j["kind"].get<std::string>();
    if (kind == "word") {
      rec.kind = TokenKind::kWord;
    } else if (kind == "phoneme") {
      rec.kind = TokenKind::kPhoneme;
    } else {
      throw fail("kind must be \"word\" or \"phoneme\", got \"" + kind + "\"");
    }
    if (!records.empty() && records.front().kind != rec.kind)
      throw fail("mixed token kinds in one manifest");
    if (j.contains("duration_s")) {
      if (!j["duration_s"].is_number()) throw fail("duration_s must be a number");
      const double d = j["duration_s"].get<double>();
      if (!(d >= 0.0)) throw fail("duration_s must be nonnegative");
      rec.duration_s = d;
    }
    if (j.contains("features") && j["features"].is_string())
      rec.features_path = j["features"].get<std::string>();
    records.push_back(std::move(rec));
  }
  if (in.bad()) throw Error(ErrorKind::kIo, "read failed for " + source_name);
  return records;
}

std::vector<UtteranceRecord> LoadManifest(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open manifest " + path.string());
  return ParseManifest(in, path.string());
}

std::string ManifestLine(const UtteranceRecord &record) {
  // ordered_json keeps the key order stable in the output file.
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["audio"] = record.audio_path;
  std::string text;
  for (std::size_t i = 0; i < record.transcript.size(); ++i) {
    if (i) text += ' ';
    text += record.transcript[i];
  }
  j["text"] = text;
  j["kind"] = TokenKindName(record.kind);
  if (record.duration_s) j["duration_s"] = *record.duration_s;
  if (record.features_path) j["features"] = *record.features_path;
  return j.dump();
}

void WriteManifest(const std::vector<UtteranceRecord> &records,
                   const std::filesystem::path &path) {
  std::string text;
  for (const auto &rec : records) {
    text += ManifestLine(rec);
    text += '\n';
  }
  WriteFileAtomic(path, text);
}

}  // namespace speechaug
