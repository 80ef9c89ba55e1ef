// Copyright 2026 The Formality Transfer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "formality/lexicon.hpp"
#include "formality/report.hpp"
#include "formality/tagging.hpp"
#include "formality/text.hpp"
#include "formality/toy_task.hpp"
#include "formality/trainer.hpp"

namespace formality {

struct RunConfig {
  std::string corpus;          // ParsMap TSV; source of the lexicon when none is given
  std::string rules;           // rules TSV
  std::string trigram_corpus;  // one sentence per line; defaults to the corpus formal side
  std::string lexicon;         // informal\tformal\tcount
  std::string tagger = "lexicon";  // "lexicon" or "sidecar"
  std::string tag_lexicon;         // word\tTAG, optional
  std::vector<std::string> sidecars;  // token/TAG files; default is PATH.tags per input
  std::uint64_t seed = 1;
  std::size_t threshold = kDefaultLengthThreshold;
  std::string out_dir = ".";
};

enum class Engine { kRules, kDict };
Engine parse_engine(const std::string& name);

/// Converts one sentence per line. Returns the number of lines written.
std::size_t cmd_convert(Engine engine, std::istream& in, std::ostream& out, const RunConfig& config);
std::size_t cmd_convert(Engine engine, const std::string& in_path, const std::string& out_path,
                        const RunConfig& config);

struct SystemOutput {
  std::string name;
  std::vector<TokenSeq> sentences;
};

/// Reads "NAME=PATH".
SystemOutput load_system_output(const std::string& spec);
SystemOutput load_system_output(const std::string& name, const std::string& path);

struct PerSentenceScore {
  std::size_t index = 0;
  double bleu = 0.0;
  double rouge1 = 0.0;
  double rouge_l = 0.0;
  std::optional<double> rsw;
  double tag_error = 0.0;
  std::size_t zwnj_mismatches = 0;
};

struct ScoreResult {
  std::vector<MetricReport> reports;  // per system: aggregated, short, long
  std::vector<std::pair<std::string, std::vector<PerSentenceScore>>> per_sentence;
};

/// Scores each system against the formal side of `test`. Throws FormatError
/// when a system's sentence count differs from the test corpus.
ScoreResult score_systems(const Corpus& test, const std::vector<SystemOutput>& systems,
                          const Tagger& tagger, const RswVocabulary* vocabulary,
                          std::size_t threshold = kDefaultLengthThreshold);

/// Runs score_systems and writes reports.json, reports.tsv and one
/// NAME.sentences.tsv per system into config.out_dir.
ScoreResult cmd_score(const std::string& test_path, const std::vector<std::string>& system_specs,
                      const RunConfig& config);

enum class ReportFormat { kTsv, kJson, kMarkdown };
ReportFormat parse_report_format(const std::string& name);

/// Accepts a directory holding reports.json or a .json/.tsv file.
std::string cmd_report(const std::string& in_path, ReportFormat format);

struct SplitPaths {
  std::string train, test, short_set, long_set;
};

SplitPaths cmd_split(const std::string& corpus_path, const RunConfig& config);

/// Writes one JSON object per log entry to `log`; returns both runs.
TrainDemoResult cmd_train_demo(const TrainConfig& config, std::ostream& log);

std::string train_demo_table(const TrainDemoResult& result);

}  // namespace formality
