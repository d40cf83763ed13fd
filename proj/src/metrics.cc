// speechaug/metrics.cc

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

#include "speechaug/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "speechaug/errors.h"

namespace speechaug {

double EditCounts::RatePercent() const {
  return 100.0 * static_cast<double>(Errors()) /
         static_cast<double>(std::max<std::size_t>(ref_len, 1));
}

EditCounts &EditCounts::operator+=(const EditCounts &other) {
  substitutions += other.substitutions;
  deletions += other.deletions;
  insertions += other.insertions;
  hits += other.hits;
  ref_len += other.ref_len;
  return *this;
}

Alignment Align(const std::vector<std::string> &ref,
                const std::vector<std::string> &hyp) {
  // Each cell holds (edit cost, hits); lower cost wins, then more hits.
  struct Cell {
    std::size_t cost = 0;
    std::size_t hits = 0;
    bool operator==(const Cell &o) const = default;
    bool BetterThan(const Cell &o) const {
      return cost != o.cost ? cost < o.cost : hits > o.hits;
    }
  };
  const std::size_t n = ref.size(), m = hyp.size();
  const std::size_t cols = m + 1;
  std::vector<Cell> table((n + 1) * cols);
  auto at = [&](std::size_t i, std::size_t j) -> Cell & { return table[i * cols + j]; };
  auto hit = [](Cell c) { return Cell{c.cost, c.hits + 1}; };
  auto edit = [](Cell c) { return Cell{c.cost + 1, c.hits}; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = {i, 0};
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = {j, 0};
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      Cell best = ref[i - 1] == hyp[j - 1] ? hit(at(i - 1, j - 1)) : edit(at(i - 1, j - 1));
      const Cell del = edit(at(i - 1, j)), ins = edit(at(i, j - 1));
      if (del.BetterThan(best)) best = del;
      if (ins.BetterThan(best)) best = ins;
      at(i, j) = best;
    }
  }

  Alignment result;
  result.counts.ref_len = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const Cell here = at(i, j);
    EditOp op;
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] && here == hit(at(i - 1, j - 1))) {
      op = EditOp::kHit;
    } else if (i > 0 && j > 0 && ref[i - 1] != hyp[j - 1] && here == edit(at(i - 1, j - 1))) {
      op = EditOp::kSubstitution;
    } else if (i > 0 && here == edit(at(i - 1, j))) {
      op = EditOp::kDeletion;
    } else {
      op = EditOp::kInsertion;
    }
    switch (op) {
      case EditOp::kHit: ++result.counts.hits; --i; --j; break;
      case EditOp::kSubstitution: ++result.counts.substitutions; --i; --j; break;
      case EditOp::kDeletion: ++result.counts.deletions; --i; break;
      case EditOp::kInsertion: ++result.counts.insertions; --j; break;
    }
    result.ops.push_back(op);
  }
  std::reverse(result.ops.begin(), result.ops.end());
  return result;
}

EditCounts EditDistance(const std::vector<std::string> &ref,
                        const std::vector<std::string> &hyp) {
  return Align(ref, hyp).counts;
}

ScoreReport ScoreCorpus(
    const std::vector<std::pair<UtteranceRecord, std::vector<std::string>>> &pairs) {
  if (pairs.empty()) throw Error(ErrorKind::kEmptyCorpus, "no utterances to score");
  ScoreReport report;
  report.kind = pairs.front().first.kind;
  for (const auto &[rec, hyp] : pairs) {
    const EditCounts counts = EditDistance(rec.transcript, hyp);
    report.corpus += counts;
    report.utterances.emplace_back(rec.id, counts);
  }
  return report;
}

std::string Lowercase(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return text;
}

ScoreReport ScoreCorpus(const std::vector<UtteranceRecord> &refs,
                        const std::vector<HypothesisRecord> &hyps, bool lowercase) {
  if (refs.empty()) throw Error(ErrorKind::kEmptyCorpus, "reference manifest is empty");
  std::unordered_map<std::string, const HypothesisRecord *> by_id;
  for (const auto &h : hyps) {
    if (!by_id.emplace(h.id, &h).second)
      throw Error(ErrorKind::kMissingHypothesis, "duplicate hypothesis id '" + h.id + "'");
  }
  auto normalize = [lowercase](std::vector<std::string> tokens) {
    if (lowercase)
      for (auto &t : tokens) t = Lowercase(std::move(t));
    return tokens;
  };

  std::vector<std::pair<UtteranceRecord, std::vector<std::string>>> pairs;
  pairs.reserve(refs.size());
  for (const auto &ref : refs) {
    auto it = by_id.find(ref.id);
    if (it == by_id.end())
      throw Error(ErrorKind::kMissingHypothesis, "no hypothesis for id '" + ref.id + "'");
    UtteranceRecord r = ref;
    r.transcript = normalize(r.transcript);
    pairs.emplace_back(std::move(r), normalize(it->second->tokens));
    by_id.erase(it);
  }
  if (!by_id.empty()) {
    // Report the first stray id in file order.
    for (const auto &h : hyps) {
      if (by_id.count(h.id))
        throw Error(ErrorKind::kMissingHypothesis,
                    "hypothesis id '" + h.id + "' has no reference");
    }
  }
  return ScoreCorpus(pairs);
}

std::vector<HypothesisRecord> LoadHypotheses(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open hypothesis file " + path.string());
  std::vector<HypothesisRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw Error(ErrorKind::kManifestParse, where + "bad JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
        !j.contains("text") || !j["text"].is_string())
      throw Error(ErrorKind::kManifestParse, where + "need string fields id and text");
    out.push_back({j["id"].get<std::string>(), Tokenize(j["text"].get<std::string>())});
  }
  return out;
}

namespace {

nlohmann::ordered_json CountsToJson(const EditCounts &c) {
  nlohmann::ordered_json j;
  j["S"] = c.substitutions;
  j["D"] = c.deletions;
  j["I"] = c.insertions;
  j["H"] = c.hits;
  j["N"] = c.ref_len;
  j["rate_percent"] = c.RatePercent();
  return j;
}

}  // namespace

std::string ReportToJson(const ScoreReport &report,
                         const std::optional<std::string> &system,
                         const std::optional<std::string> &test_set) {
  nlohmann::ordered_json j;
  if (system) j["system"] = *system;
  if (test_set) j["test_set"] = *test_set;
  j["kind"] = TokenKindName(report.kind);
  j["corpus"] = CountsToJson(report.corpus);
  nlohmann::ordered_json utts = nlohmann::ordered_json::object();
  for (const auto &[id, counts] : report.utterances) utts[id] = CountsToJson(counts);
  j["utterances"] = std::move(utts);
  return j.dump(2) + "\n";
}

LabeledRate ReadReportRate(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open report " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorKind::kManifestParse, path.string() + ": bad JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("corpus") || !j["corpus"].is_object() ||
      !j["corpus"].contains("rate_percent") || !j["corpus"]["rate_percent"].is_number())
    throw Error(ErrorKind::kManifestParse, path.string() + ": missing corpus.rate_percent");
  LabeledRate out;
  out.rate_percent = j["corpus"]["rate_percent"].get<double>();
  if (j.contains("system") && j["system"].is_string()) out.system = j["system"];
  if (j.contains("test_set") && j["test_set"].is_string()) out.test_set = j["test_set"];
  return out;
}

namespace {

std::size_t DisplayWidth(const std::string &s) {
  std::size_t w = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++w;  // count UTF-8 lead bytes only
  return w;
}

std::string Pad(const std::string &s, std::size_t width) {
  return s + std::string(width - std::min(width, DisplayWidth(s)), ' ');
}

std::string FormatRate(double rate) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", rate);
  return buf;
}

}  // namespace

std::string FormatResultsTable(const std::vector<TableEntry> &entries) {
  if (entries.empty()) throw Error(ErrorKind::kBadParams, "results table needs at least one entry");

  std::vector<std::string> columns;
  std::vector<std::pair<std::string, std::string>> rows;  // (group, system)
  std::map<std::pair<std::string, std::string>, double> cells;
  for (const auto &e : entries) {
    if (std::find(columns.begin(), columns.end(), e.test_set) == columns.end())
      columns.push_back(e.test_set);
    const auto row = std::make_pair(e.group, e.system);
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
    if (!cells.emplace(std::make_pair(e.system, e.test_set), e.rate_percent).second)
      throw Error(ErrorKind::kBadParams,
                  "duplicate entry for (" + e.system + ", " + e.test_set + ")");
  }
  // Keep groups contiguous, preserving first appearance within each.
  std::stable_sort(rows.begin(), rows.end(), [&](const auto &a, const auto &b) {
    auto first = [&](const std::string &g) {
      return std::find_if(rows.begin(), rows.end(),
                          [&](const auto &r) { return r.first == g; }) - rows.begin();
    };
    return first(a.first) < first(b.first);
  });

  // Minimum per (group, column), compared at printed precision.
  auto key = [](double rate) { return std::llround(rate * 100.0); };
  std::map<std::pair<std::string, std::string>, long long> minima;
  for (const auto &[group, system] : rows) {
    for (const auto &col : columns) {
      auto it = cells.find({system, col});
      if (it == cells.end()) continue;
      auto [m, inserted] = minima.emplace(std::make_pair(group, col), key(it->second));
      if (!inserted) m->second = std::min(m->second, key(it->second));
    }
  }

  std::vector<std::vector<std::string>> grid;
  grid.push_back({"System"});
  for (const auto &c : columns) grid[0].push_back(c);
  for (const auto &[group, system] : rows) {
    std::vector<std::string> line{system};
    for (const auto &col : columns) {
      auto it = cells.find({system, col});
      if (it == cells.end()) {
        line.push_back("\xE2\x80\x94");
        continue;
      }
      std::string text = FormatRate(it->second);
      if (key(it->second) == minima.at({group, col})) text = "**" + text + "**";
      line.push_back(text);
    }
    grid.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(columns.size() + 1, 3);
  for (const auto &line : grid)
    for (std::size_t c = 0; c < line.size(); ++c)
      widths[c] = std::max(widths[c], DisplayWidth(line[c]));

  std::ostringstream out;
  auto emit = [&](const std::vector<std::string> &line) {
    out << '|';
    for (std::size_t c = 0; c < line.size(); ++c) out << ' ' << Pad(line[c], widths[c]) << " |";
    out << '\n';
  };
  emit(grid[0]);
  out << '|';
  for (std::size_t w : widths) out << std::string(w + 2, '-') << '|';
  out << '\n';
  for (std::size_t r = 1; r < grid.size(); ++r) emit(grid[r]);
  return out.str();
}

}  // namespace speechaug
