// speechaug/cli.cc

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

#include "speechaug/cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "speechaug/audio_io.h"
#include "speechaug/augment.h"
#include "speechaug/config.h"
#include "speechaug/dsp.h"
#include "speechaug/errors.h"
#include "speechaug/metrics.h"
#include "speechaug/parallel.h"
#include "speechaug/render.h"
#include "speechaug/rng.h"

namespace fs = std::filesystem;

namespace speechaug {

namespace {

/// Bad invocation detected after argument parsing (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  uint64_t seed = 0;
  int workers = 1;
  std::string config_path;
  bool force = false;
};

std::optional<ConfigFile> LoadConfig(const GlobalOptions &g) {
  if (g.config_path.empty()) return std::nullopt;
  return ConfigFile::Load(g.config_path);
}

// Relative audio paths in a manifest are relative to the manifest itself.
fs::path ResolveAudio(const fs::path &manifest, const std::string &audio) {
  const fs::path p(audio);
  if (p.is_absolute()) return p;
  return (manifest.parent_path() / p).lexically_normal();
}

void CheckIdIsFileName(const std::string &id) {
  if (id == "." || id == ".." || id.find_first_of("/\\") != std::string::npos ||
      id.find('\0') != std::string::npos)
    throw Error(ErrorKind::kBadParams, "id '" + id + "' cannot be used as a file name");
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string Fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void EnsureOutDir(const fs::path &out_dir, const fs::path &input_file) {
  std::error_code ec;
  if (fs::exists(out_dir) && fs::exists(input_file.parent_path().empty()
                                            ? fs::path(".")
                                            : input_file.parent_path()) &&
      fs::equivalent(out_dir, input_file.parent_path().empty() ? fs::path(".")
                                                               : input_file.parent_path(),
                     ec))
    throw UsageError("output directory must differ from the input manifest's directory");
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + out_dir.string());
}

// Options shared by every command that computes features.
struct FeatureFlags {
  std::optional<double> window_s, hop_s, fmin_hz, fmax_hz, floor_db;
  std::optional<int> fft_size, n_mels;

  void Register(CLI::App *cmd) {
    cmd->add_option("--window-s", window_s, "Analysis window length in seconds");
    cmd->add_option("--hop-s", hop_s, "Frame hop in seconds");
    cmd->add_option("--fft-size", fft_size, "FFT size (power of two)");
    cmd->add_option("--n-mels", n_mels, "Number of mel channels");
    cmd->add_option("--fmin-hz", fmin_hz, "Lowest filterbank frequency");
    cmd->add_option("--fmax-hz", fmax_hz, "Highest filterbank frequency (0 = Nyquist)");
    cmd->add_option("--floor-db", floor_db, "Log-energy floor in dB");
  }

  FeatureParams Resolve(const std::optional<ConfigFile> &cfg) const {
    FeatureParams p;
    if (cfg) ApplyFeatureSection(*cfg, &p);
    if (window_s) p.window_s = *window_s;
    if (hop_s) p.hop_s = *hop_s;
    if (fft_size) p.fft_size = *fft_size;
    if (n_mels) p.n_mels = *n_mels;
    if (fmin_hz) p.fmin_hz = *fmin_hz;
    if (fmax_hz) p.fmax_hz = *fmax_hz;
    if (floor_db) p.floor_db = *floor_db;
    return p;
  }
};

// Augmentation parameters; unset flags fall back to the config file, then
// to the built-in defaults.
struct AugmentFlags {
  std::optional<double> snr_db;
  std::vector<double> factors;
  std::optional<int> time_warp_w, freq_mask_f, n_freq_masks, time_mask_t, n_time_masks;
  std::optional<std::string> fill;

  void Register(CLI::App *cmd) {
    cmd->add_option("--snr-db", snr_db, "Target SNR for Gaussian noise (dB)");
    cmd->add_option("--factors", factors, "Speed factor set")->delimiter(',');
    cmd->add_option("--time-warp-w", time_warp_w, "SpecAugment time warp W (frames)");
    cmd->add_option("--freq-mask-f", freq_mask_f, "SpecAugment frequency mask F");
    cmd->add_option("--n-freq-masks", n_freq_masks, "Number of frequency masks");
    cmd->add_option("--time-mask-t", time_mask_t, "SpecAugment time mask T (frames)");
    cmd->add_option("--n-time-masks", n_time_masks, "Number of time masks");
    cmd->add_option("--fill", fill, "Mask fill: floor or utterance_mean")
        ->check(CLI::IsMember({"floor", "utterance_mean"}));
  }

  AugmentationSpec Resolve(const std::optional<ConfigFile> &cfg, const GlobalOptions &g,
                           bool seed_given) const {
    AugmentationSpec spec;
    if (cfg) ApplyAugmentSection(*cfg, &spec);
    if (seed_given || !(cfg && cfg->Section("augment") &&
                        cfg->Section("augment")->count("seed"))) {
      spec.noise.seed = spec.speed.seed = spec.spec_augment.seed = g.seed;
    }
    SpecAugmentSpec &sa = spec.spec_augment;
    if (snr_db) spec.noise.snr_db = *snr_db;
    if (!factors.empty()) spec.speed.factors = factors;
    if (time_warp_w) sa.time_warp_w = *time_warp_w;
    if (freq_mask_f) sa.freq_mask_f = *freq_mask_f;
    if (n_freq_masks) sa.n_freq_masks = *n_freq_masks;
    if (time_mask_t) sa.time_mask_t = *time_mask_t;
    if (n_time_masks) sa.n_time_masks = *n_time_masks;
    if (fill) sa.fill = *fill == "floor" ? FillMode::kFloor : FillMode::kUtteranceMean;

    if (!std::isfinite(spec.noise.snr_db)) throw UsageError("snr_db must be finite");
    if (spec.speed.factors.empty()) throw UsageError("speed factor set is empty");
    for (double f : spec.speed.factors)
      if (!(f > 0.0) || !std::isfinite(f)) throw UsageError("speed factors must be positive");
    try {
      sa.Validate();
    } catch (const Error &e) {
      throw UsageError(e.what());
    }
    return spec;
  }
};

void ReportFailures(const std::vector<TaskFailure> &failures,
                    const std::vector<UtteranceRecord> &records, std::ostream &err) {
  for (const auto &f : failures)
    err << "error: utterance '" << records[f.index].id << "': " << f.message << "\n";
}

// ---------------------------------------------------------------------------
// augment

struct AugmentResult {
  UtteranceRecord record;
  std::size_t clip_count = 0;
  double measured_snr_db = 0.0;
  double factor = 1.0;
};

int CmdAugment(const GlobalOptions &g, bool seed_given, const std::string &manifest_arg,
               const std::string &out_arg, const std::string &kind,
               const AugmentFlags &aug_flags, const FeatureFlags &feat_flags,
               bool append_original, std::ostream &out, std::ostream &err) {
  static const std::set<std::string> kKinds = {"gaussian_noise", "speed", "specaugment"};
  if (!kKinds.count(kind))
    throw UsageError("unknown augmentation kind '" + kind +
                     "' (expected gaussian_noise, speed or specaugment)");
  const auto cfg = LoadConfig(g);
  const AugmentationSpec spec = aug_flags.Resolve(cfg, g, seed_given);
  const FeatureParams features = feat_flags.Resolve(cfg);

  const fs::path manifest_path(manifest_arg);
  const fs::path out_dir(out_arg);
  if (!fs::exists(manifest_path))
    throw UsageError("manifest " + manifest_path.string() + " does not exist");
  EnsureOutDir(out_dir, manifest_path);
  const fs::path out_manifest = out_dir / "manifest.jsonl";
  if (fs::exists(out_manifest) && !g.force)
    throw UsageError(out_manifest.string() + " exists (use --force to overwrite)");

  const auto records = LoadManifest(manifest_path);
  const std::string subdir = kind == "specaugment" ? "feats" : "wav";
  std::error_code ec;
  fs::create_directories(out_dir / subdir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + (out_dir / subdir).string());

  std::vector<AugmentResult> results(records.size());
  const auto failures = ParallelFor(records.size(), g.workers, [&](std::size_t i) {
    const UtteranceRecord &rec = records[i];
    CheckIdIsFileName(rec.id);
    const fs::path audio_path = ResolveAudio(manifest_path, rec.audio_path);
    const AudioBuffer audio = ReadWav(audio_path);
    const uint64_t utt_seed = UtteranceSeed(spec.noise.seed, rec.id);
    AugmentResult r;
    r.record = rec;
    if (kind == "gaussian_noise") {
      const NoiseResult noisy = AddGaussianNoise(audio, {spec.noise.snr_db, utt_seed});
      double signal = 0.0, noise = 0.0;
      std::size_t kept = 0;
      for (std::size_t k = 0; k < audio.size(); ++k) {
        const double x = audio.samples()[k];
        signal += x * x;
        const double y = noisy.audio.samples()[k];
        if (std::abs(y) < 1.0) {
          noise += (y - x) * (y - x);
          ++kept;
        }
      }
      signal /= static_cast<double>(audio.size());
      noise /= static_cast<double>(std::max<std::size_t>(kept, 1));
      r.measured_snr_db = 10.0 * std::log10(signal / noise);
      r.clip_count = noisy.clip_count;
      const std::string rel = subdir + "/" + rec.id + ".wav";
      WriteWav(noisy.audio, out_dir / rel);
      r.record.audio_path = rel;
      r.record.duration_s = noisy.audio.duration_s();
    } else if (kind == "speed") {
      SpeedSpec speed = spec.speed;
      r.factor = PickSpeedFactor(speed, rec.id);
      const AudioBuffer fast = SpeedPerturb(audio, r.factor);
      const std::string rel = subdir + "/" + rec.id + ".wav";
      WriteWav(fast, out_dir / rel);
      r.record.audio_path = rel;
      r.record.duration_s = fast.duration_s();
    } else {
      SpecAugmentSpec policy = spec.spec_augment;
      policy.seed = utt_seed;
      const MelSpectrogram mel = SpecAugment(ComputeLogMel(audio, features), policy);
      const std::string rel = subdir + "/" + rec.id + ".lmel";
      WriteMelDump(mel, out_dir / rel);
      r.record.audio_path = fs::absolute(audio_path).lexically_normal().string();
      r.record.features_path = rel;
    }
    results[i] = std::move(r);
  });
  if (!failures.empty()) {
    ReportFailures(failures, records, err);
    return kExitFailure;
  }

  std::vector<UtteranceRecord> manifest;
  for (const auto &r : results) manifest.push_back(r.record);
  if (append_original) {
    std::set<std::string> ids;
    for (const auto &rec : records) ids.insert(rec.id);
    for (const auto &rec : records) {
      UtteranceRecord orig = rec;
      orig.id = rec.id + "-orig";
      if (ids.count(orig.id))
        throw Error(ErrorKind::kManifestParse, "appended id '" + orig.id + "' collides");
      orig.audio_path =
          fs::absolute(ResolveAudio(manifest_path, rec.audio_path)).lexically_normal().string();
      manifest.push_back(std::move(orig));
    }
  }
  WriteManifest(manifest, out_manifest);
  AugmentationSpec written = spec;
  WriteFileAtomic(out_dir / "augment.toml", AugmentSectionToToml(written));

  std::size_t clips = 0;
  double snr_sum = 0.0;
  std::map<double, std::size_t> histogram;
  for (const auto &r : results) {
    clips += r.clip_count;
    snr_sum += r.measured_snr_db;
    if (kind == "speed") ++histogram[r.factor];
  }
  out << "augment: kind=" << kind << " files=" << results.size() << " clipped_samples=" << clips;
  if (kind == "gaussian_noise" && !results.empty())
    out << " mean_snr_db=" << Fixed2(snr_sum / static_cast<double>(results.size()));
  if (kind == "speed") {
    out << " factors=";
    bool first = true;
    for (double f : spec.speed.factors) histogram.emplace(f, 0);
    for (const auto &[f, n] : histogram) {
      out << (first ? "" : ",") << FormatDouble(f) << ":" << n;
      first = false;
    }
  }
  out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// featurize

int CmdFeaturize(const GlobalOptions &g, const std::string &manifest_arg,
                 const std::string &out_arg, const FeatureFlags &feat_flags,
                 std::ostream &out, std::ostream &err) {
  const auto cfg = LoadConfig(g);
  const FeatureParams features = feat_flags.Resolve(cfg);
  const fs::path manifest_path(manifest_arg);
  const fs::path out_dir(out_arg);
  if (!fs::exists(manifest_path))
    throw UsageError("manifest " + manifest_path.string() + " does not exist");
  EnsureOutDir(out_dir, manifest_path);
  const fs::path out_manifest = out_dir / "manifest.jsonl";
  if (fs::exists(out_manifest) && !g.force)
    throw UsageError(out_manifest.string() + " exists (use --force to overwrite)");

  const auto records = LoadManifest(manifest_path);
  if (records.empty()) {
    err << "warning: manifest " << manifest_path.string() << " is empty; nothing to do\n";
    out << "featurize: files=0\n";
    return kExitOk;
  }

  std::vector<UtteranceRecord> written(records.size());
  const auto failures = ParallelFor(records.size(), g.workers, [&](std::size_t i) {
    const UtteranceRecord &rec = records[i];
    CheckIdIsFileName(rec.id);
    const fs::path audio_path = ResolveAudio(manifest_path, rec.audio_path);
    const MelSpectrogram mel = ComputeLogMel(ReadWav(audio_path), features);
    const std::string rel = rec.id + ".lmel";
    WriteMelDump(mel, out_dir / rel);
    UtteranceRecord r = rec;
    r.audio_path = fs::absolute(audio_path).lexically_normal().string();
    r.features_path = rel;
    written[i] = std::move(r);
  });
  if (!failures.empty()) {
    ReportFailures(failures, records, err);
    return kExitFailure;
  }
  WriteManifest(written, out_manifest);
  out << "featurize: files=" << written.size() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// score

int CmdScore(const GlobalOptions &g, const std::string &ref_arg, const std::string &hyp_arg,
             const std::string &out_arg, bool lowercase_flag,
             const std::optional<std::string> &system,
             const std::optional<std::string> &test_set, std::ostream &out) {
  bool lowercase = false;
  if (const auto cfg = LoadConfig(g)) ApplyScoreSection(*cfg, &lowercase);
  if (lowercase_flag) lowercase = true;
  if (!fs::exists(ref_arg)) throw UsageError("reference manifest " + ref_arg + " does not exist");
  if (!fs::exists(hyp_arg)) throw UsageError("hypothesis file " + hyp_arg + " does not exist");
  if (!out_arg.empty() && fs::exists(out_arg) && !g.force)
    throw UsageError(out_arg + " exists (use --force to overwrite)");

  const auto refs = LoadManifest(ref_arg);
  const auto hyps = LoadHypotheses(hyp_arg);
  const ScoreReport report = ScoreCorpus(refs, hyps, lowercase);
  if (!out_arg.empty()) WriteFileAtomic(out_arg, ReportToJson(report, system, test_set));
  const char *metric = report.kind == TokenKind::kPhoneme ? "PER" : "WER";
  out << metric << " " << Fixed2(report.RatePercent()) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// report

int CmdReport(const std::vector<std::string> &paths, const std::vector<std::string> &entries,
              const std::string &group_by, const std::string &out_arg, bool force,
              std::ostream &out) {
  struct Source {
    std::optional<std::string> system, test_set;
    std::string path;
  };
  std::vector<Source> sources;
  for (const auto &p : paths) sources.push_back({std::nullopt, std::nullopt, p});
  for (const auto &e : entries) {
    // SYSTEM,TEST_SET=PATH
    const auto eq = e.rfind('=');
    const auto comma = e.find(',');
    if (eq == std::string::npos || comma == std::string::npos || comma > eq)
      throw UsageError("--entry expects SYSTEM,TEST_SET=PATH, got '" + e + "'");
    sources.push_back({e.substr(0, comma), e.substr(comma + 1, eq - comma - 1), e.substr(eq + 1)});
  }
  if (sources.empty()) throw UsageError("report needs at least one score report");

  std::vector<TableEntry> table;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto &src : sources) {
    if (!fs::exists(src.path)) throw UsageError("report " + src.path + " does not exist");
    const LabeledRate rate = ReadReportRate(src.path);
    const auto system = src.system ? src.system : rate.system;
    const auto test_set = src.test_set ? src.test_set : rate.test_set;
    if (!system || !test_set)
      throw UsageError(src.path + " carries no system/test_set labels; use --entry");
    if (!seen.insert({*system, *test_set}).second)
      throw UsageError("duplicate (system, test set) pair (" + *system + ", " + *test_set + ")");
    TableEntry entry{"", *system, *test_set, rate.rate_percent};
    if (group_by == "prefix") entry.group = system->substr(0, system->find('-'));
    table.push_back(std::move(entry));
  }
  const std::string text = FormatResultsTable(table);
  if (!out_arg.empty()) {
    if (fs::exists(out_arg) && !force)
      throw UsageError(out_arg + " exists (use --force to overwrite)");
    WriteFileAtomic(out_arg, text);
  }
  out << text;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// render

struct RenderFlags {
  std::string input;
  std::string out_path;
  std::string out_dir;
  bool compare = false;
  std::string format = "pgm";
  double gamma = 1.0;
  std::optional<double> db_lo, db_hi;
  std::optional<double> speed_factor;
};

int CmdRender(const GlobalOptions &g, bool seed_given, const RenderFlags &rf,
              const AugmentFlags &aug_flags, const FeatureFlags &feat_flags,
              std::ostream &out) {
  if (rf.input.empty() || !fs::exists(rf.input))
    throw UsageError("input " + rf.input + " does not exist");
  if (rf.db_lo.has_value() != rf.db_hi.has_value())
    throw UsageError("--db-lo and --db-hi go together");
  if (rf.db_lo && !(*rf.db_lo < *rf.db_hi)) throw UsageError("need --db-lo < --db-hi");
  if (!(rf.gamma > 0.0)) throw UsageError("--gamma must be positive");

  const auto cfg = LoadConfig(g);
  const AugmentationSpec spec = aug_flags.Resolve(cfg, g, seed_given);
  const FeatureParams features = feat_flags.Resolve(cfg);

  ImageSpec image;
  image.format = rf.format == "png" ? ImageFormat::kPng : ImageFormat::kPgm;
  image.gamma = rf.gamma;
  if (rf.db_lo) image.db_range = std::make_pair(*rf.db_lo, *rf.db_hi);
  const std::string ext = rf.format == "png" ? ".png" : ".pgm";

  const auto bytes = ReadFileBytes(rf.input);
  const bool is_dump = bytes.size() >= 4 && std::equal(bytes.begin(), bytes.begin() + 4, "LMEL");
  const std::string id = fs::path(rf.input).stem().string();

  if (!rf.compare) {
    if (rf.out_path.empty()) throw UsageError("render needs --out (or --compare --out-dir)");
    if (fs::exists(rf.out_path) && !g.force)
      throw UsageError(rf.out_path + " exists (use --force to overwrite)");
    const MelSpectrogram mel =
        is_dump ? DecodeMelDump(bytes) : ComputeLogMel(ParseWav(bytes), features);
    RenderSpectrogram(mel, image, rf.out_path);
    out << "render: wrote " << rf.out_path << " (" << mel.num_frames() << "x"
        << mel.num_channels() << ")\n";
    return kExitOk;
  }

  if (is_dump) throw UsageError("--compare needs a WAV input");
  if (rf.out_dir.empty()) throw UsageError("--compare needs --out-dir");
  const fs::path out_dir(rf.out_dir);
  const std::vector<std::string> names = {"original", "specaugment", "speed", "noise"};
  for (const auto &n : names) {
    if (fs::exists(out_dir / (n + ext)) && !g.force)
      throw UsageError((out_dir / (n + ext)).string() + " exists (use --force to overwrite)");
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create " + out_dir.string());

  const AudioBuffer audio = ParseWav(bytes);
  const uint64_t utt_seed = UtteranceSeed(spec.noise.seed, id);
  const MelSpectrogram original = ComputeLogMel(audio, features);

  SpecAugmentSpec policy = spec.spec_augment;
  policy.seed = utt_seed;
  const MelSpectrogram masked = SpecAugment(original, policy);

  const double factor = rf.speed_factor ? *rf.speed_factor : PickSpeedFactor(spec.speed, id);
  const MelSpectrogram sped = ComputeLogMel(SpeedPerturb(audio, factor), features);
  const MelSpectrogram noisy =
      ComputeLogMel(AddGaussianNoise(audio, {spec.noise.snr_db, utt_seed}).audio, features);

  // One shared dB range so the four panels are directly comparable.
  if (!image.db_range) {
    const auto [mn, mx] =
        std::minmax_element(original.values().begin(), original.values().end());
    if (*mn < *mx) image.db_range = std::make_pair(*mn, *mx);
  }
  const std::vector<const MelSpectrogram *> panels = {&original, &masked, &sped, &noisy};
  for (std::size_t i = 0; i < names.size(); ++i)
    RenderSpectrogram(*panels[i], image, out_dir / (names[i] + ext));
  out << "render: wrote 4 panels to " << out_dir.string() << " (speed factor "
      << FormatDouble(factor) << ")\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"speechaug: speech data augmentation and scoring toolkit", "speechaug"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  auto *seed_opt = app.add_option("--seed", g.seed, "Global seed (u64)");
  app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--config", g.config_path, "TOML-style config file");
  app.add_flag("--force", g.force, "Overwrite existing outputs");

  // augment
  auto *augment = app.add_subcommand("augment", "Augment every utterance of a manifest");
  std::string aug_manifest, aug_out, aug_kind;
  bool append_original = false;
  AugmentFlags aug_flags;
  FeatureFlags feat_flags;
  augment->add_option("--manifest", aug_manifest, "Input manifest (JSON lines)")->required();
  augment->add_option("--out-dir", aug_out, "Output directory")->required();
  augment->add_option("--kind", aug_kind, "gaussian_noise, speed or specaugment")->required();
  augment->add_flag("--append-original", append_original,
                    "Also list the original utterances (ids suffixed -orig)");
  aug_flags.Register(augment);
  feat_flags.Register(augment);

  // featurize
  auto *featurize = app.add_subcommand("featurize", "Compute log-mel feature dumps");
  std::string feat_manifest, feat_out;
  FeatureFlags feat_flags2;
  featurize->add_option("--manifest", feat_manifest, "Input manifest")->required();
  featurize->add_option("--out-dir", feat_out, "Output directory")->required();
  feat_flags2.Register(featurize);

  // score
  auto *score = app.add_subcommand("score", "Score hypotheses against a reference manifest");
  std::string ref_path, hyp_path, report_out;
  bool lowercase = false;
  std::optional<std::string> system, test_set;
  score->add_option("--ref", ref_path, "Reference manifest")->required();
  score->add_option("--hyp", hyp_path, "Hypothesis JSON lines")->required();
  score->add_option("--out", report_out, "Write the score report JSON here");
  score->add_flag("--lowercase", lowercase, "Lowercase tokens before comparing");
  score->add_option("--system", system, "System label stored in the report");
  score->add_option("--test-set", test_set, "Test-set label stored in the report");

  // report
  auto *report = app.add_subcommand("report", "Build a comparison table from score reports");
  std::vector<std::string> report_paths, report_entries;
  std::string group_by = "none", table_out;
  report->add_option("reports", report_paths, "Labelled score report JSON files");
  report->add_option("--entry", report_entries, "SYSTEM,TEST_SET=PATH (repeatable)");
  report->add_option("--group-by", group_by, "Bold minima per 'none' or per system 'prefix'")
      ->check(CLI::IsMember({"none", "prefix"}));
  report->add_option("--out", table_out, "Also write the table to this file");

  // render
  auto *render = app.add_subcommand("render", "Render spectrogram images");
  RenderFlags rf;
  AugmentFlags render_aug;
  FeatureFlags render_feat;
  render->add_option("--input", rf.input, "WAV file or feature dump")->required();
  render->add_option("--out", rf.out_path, "Output image (single mode)");
  render->add_option("--out-dir", rf.out_dir, "Output directory (--compare)");
  render->add_flag("--compare", rf.compare,
                   "Write original/specaugment/speed/noise panels");
  render->add_option("--format", rf.format, "pgm or png")->check(CLI::IsMember({"pgm", "png"}));
  render->add_option("--gamma", rf.gamma, "Gamma applied after range mapping");
  render->add_option("--db-lo", rf.db_lo, "Lower end of the dB range");
  render->add_option("--db-hi", rf.db_hi, "Upper end of the dB range");
  render->add_option("--speed-factor", rf.speed_factor, "Speed factor for the speed panel");
  render_aug.Register(render);
  render_feat.Register(render);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  const bool seed_given = seed_opt->count() > 0;
  try {
    if (augment->parsed())
      return CmdAugment(g, seed_given, aug_manifest, aug_out, aug_kind, aug_flags, feat_flags,
                        append_original, out, err);
    if (featurize->parsed())
      return CmdFeaturize(g, feat_manifest, feat_out, feat_flags2, out, err);
    if (score->parsed())
      return CmdScore(g, ref_path, hyp_path, report_out, lowercase, system, test_set, out);
    if (report->parsed())
      return CmdReport(report_paths, report_entries, group_by, table_out, g.force, out);
    if (render->parsed()) return CmdRender(g, seed_given, rf, render_aug, render_feat, out);
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kConfig ? kExitUsage : kExitFailure;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace speechaug
