// speechaug/metrics.h

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

#ifndef SPEECHAUG_METRICS_H_
#define SPEECHAUG_METRICS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "speechaug/audio_io.h"

namespace speechaug {

struct EditCounts {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t hits = 0;
  std::size_t ref_len = 0;

  std::size_t Errors() const { return substitutions + deletions + insertions; }
  /// 100 * (S + D + I) / N; an empty reference divides by 1 instead.
  double RatePercent() const;

  EditCounts &operator+=(const EditCounts &other);
  bool operator==(const EditCounts &other) const = default;
};

enum class EditOp { kHit, kSubstitution, kDeletion, kInsertion };

struct Alignment {
  EditCounts counts;
  std::vector<EditOp> ops;  // in reference order
};

/// Levenshtein alignment with unit costs. Among minimum-cost alignments the
/// one with the most hits is kept, which makes the counts symmetric (swapping
/// ref and hyp swaps D and I). On the backtrace, remaining ties prefer hit,
/// then substitution, then deletion, then insertion.
Alignment Align(const std::vector<std::string> &ref,
                const std::vector<std::string> &hyp);

EditCounts EditDistance(const std::vector<std::string> &ref,
                        const std::vector<std::string> &hyp);

struct ScoreReport {
  TokenKind kind = TokenKind::kWord;
  // Utterance order follows the reference manifest.
  std::vector<std::pair<std::string, EditCounts>> utterances;
  EditCounts corpus;

  /// Pooled rate: errors summed over the corpus, then divided by total N.
  double RatePercent() const { return corpus.RatePercent(); }
};

struct HypothesisRecord {
  std::string id;
  std::vector<std::string> tokens;
};

/// Pairs must be non-empty (EmptyCorpus).
ScoreReport ScoreCorpus(
    const std::vector<std::pair<UtteranceRecord, std::vector<std::string>>> &pairs);

/// Matches hypotheses to references by id. Every reference needs a
/// hypothesis and vice versa (MissingHypothesis otherwise).
ScoreReport ScoreCorpus(const std::vector<UtteranceRecord> &refs,
                        const std::vector<HypothesisRecord> &hyps,
                        bool lowercase = false);

std::string Lowercase(std::string text);

/// JSON-lines hypothesis file: {"id": ..., "text": ...} per line.
std::vector<HypothesisRecord> LoadHypotheses(const std::filesystem::path &path);

/// {"corpus": {S, D, I, H, N, rate_percent}, "utterances": {id: {...}}}
/// plus "kind" and, when given, "system" / "test_set" labels.
std::string ReportToJson(const ScoreReport &report,
                         const std::optional<std::string> &system = std::nullopt,
                         const std::optional<std::string> &test_set = std::nullopt);

struct LabeledRate {
  std::optional<std::string> system;
  std::optional<std::string> test_set;
  double rate_percent = 0.0;
};

/// Reads the corpus rate (and labels, if present) back from a report file.
LabeledRate ReadReportRate(const std::filesystem::path &path);

// ---------------------------------------------------------------------------
// Comparison tables.

struct TableEntry {
  std::string group;  // rows are compared for bolding only within a group
  std::string system;
  std::string test_set;
  double rate_percent = 0.0;
};

/// Markdown grid with systems as rows and test sets as columns (both in
/// first-appearance order). Rates print with two decimals; the lowest rate of
/// each column within each group is wrapped in ** (every tied cell is);
/// missing cells print as an em dash. Rates compare after rounding to the
/// printed precision.
std::string FormatResultsTable(const std::vector<TableEntry> &entries);

}  // namespace speechaug

#endif  // SPEECHAUG_METRICS_H_
