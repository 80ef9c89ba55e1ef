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

#include "formality/harness.hpp"

#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "formality/errors.hpp"
#include "formality/metrics.hpp"
#include "formality/ngram.hpp"
#include "formality/rules.hpp"

namespace formality {
namespace {

namespace fs = std::filesystem;

std::optional<AlignmentLexicon> load_lexicon(const RunConfig& config) {
  if (!config.lexicon.empty()) return AlignmentLexicon::load_file(config.lexicon);
  if (!config.corpus.empty()) return build_lexicon(ingest_parsmap(config.corpus));
  return std::nullopt;
}

TrigramStore load_trigrams(const RunConfig& config) {
  if (!config.trigram_corpus.empty()) return build_trigram_store_file(config.trigram_corpus);
  TrigramStore store;
  if (!config.corpus.empty()) {
    for (const auto& e : ingest_parsmap(config.corpus).entries) store.ingest(e.formal);
  }
  store.freeze();
  return store;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ResourceError(path, "cannot open output file");
  return out;
}

std::unique_ptr<Tagger> make_tagger(const RunConfig& config,
                                    const std::vector<std::string>& inputs) {
  if (config.tagger == "lexicon") {
    if (config.tag_lexicon.empty()) return std::make_unique<LexiconTagger>();
    return std::make_unique<LexiconTagger>(LexiconTagger::load_file(config.tag_lexicon));
  }
  if (config.tagger == "sidecar") {
    std::vector<std::string> paths = config.sidecars;
    if (paths.empty()) {
      for (const auto& p : inputs) paths.push_back(p + ".tags");
    }
    std::vector<TaggedSentence> all;
    for (const auto& p : paths) {
      auto part = load_sidecar(p);
      all.insert(all.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
    return std::make_unique<SidecarTagger>(std::move(all));
  }
  throw FormatError("unknown tagger '" + config.tagger + "' (expected lexicon or sidecar)");
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct SentenceInputs {
  const TokenSeq* reference;
  std::vector<std::string> rsw;
  TagSeq reference_tags;
};

MetricReport score_subset(const std::string& system, const std::string& set,
                          const std::vector<std::size_t>& indexes,
                          const std::vector<TokenSeq>& hypotheses,
                          const std::vector<TagSeq>& hypothesis_tags,
                          const std::vector<SentenceInputs>& refs) {
  MetricReport r;
  r.system = system;
  r.test_set = set;
  r.sentences = indexes.size();
  if (indexes.empty()) return r;

  std::vector<TokenSeq> hyp, ref;
  std::vector<TagPair> tags;
  RswCounts rsw;
  for (std::size_t i : indexes) {
    hyp.push_back(hypotheses[i]);
    ref.push_back(*refs[i].reference);
    tags.push_back({hypothesis_tags[i], refs[i].reference_tags});
    rsw += rsw_counts(hypotheses[i], refs[i].rsw);
    r.zwnj_mismatches += zwnj_diagnostic(hypotheses[i], *refs[i].reference);
  }
  r.bleu = bleu(hyp, ref);
  r.rouge1 = rouge_1_corpus(hyp, ref);
  r.rouge_l = rouge_l_corpus(hyp, ref);
  r.rsw = rsw_corpus_score(rsw);
  r.tms = tag_matching_score(tags);
  recompute_fti(r);
  return r;
}

void write_per_sentence(const std::vector<PerSentenceScore>& rows, const std::string& path) {
  auto out = open_output(path);
  out << "index\tbleu\trouge1\trouge_l\trsw\ttag_error\tzwnj_mismatches\n";
  for (const auto& s : rows) {
    out << s.index << '\t' << format_number(s.bleu) << '\t' << format_number(s.rouge1) << '\t'
        << format_number(s.rouge_l) << '\t' << (s.rsw ? format_number(*s.rsw) : "NA") << '\t'
        << format_number(s.tag_error) << '\t' << s.zwnj_mismatches << '\n';
  }
}

}  // namespace

Engine parse_engine(const std::string& name) {
  if (name == "rules") return Engine::kRules;
  if (name == "dict") return Engine::kDict;
  throw FormatError("unknown engine '" + name + "' (expected rules or dict)");
}

std::size_t cmd_convert(Engine engine, std::istream& in, std::ostream& out,
                        const RunConfig& config) {
  const auto lexicon = load_lexicon(config);
  RuleSet rules;
  TrigramStore trigrams;
  if (engine == Engine::kRules) {
    if (config.rules.empty()) throw ResourceError("rules", "no rules file configured");
    rules = RuleSet::load_file(config.rules);
    trigrams = load_trigrams(config);
  } else if (!lexicon) {
    throw ResourceError("lexicon", "dict engine needs a lexicon or a corpus to build one from");
  }

  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) {
    const TokenSeq sentence = tokenize_text(line);
    const TokenSeq converted =
        engine == Engine::kRules
            ? convert_sentence(sentence, rules, &trigrams, lexicon ? &*lexicon : nullptr)
            : dictionary_convert(sentence, *lexicon);
    out << converted.raw() << '\n';
    ++n;
  }
  return n;
}

std::size_t cmd_convert(Engine engine, const std::string& in_path, const std::string& out_path,
                        const RunConfig& config) {
  std::ifstream in(in_path);
  if (!in) throw ResourceError(in_path, "cannot open input file");
  std::ostringstream buffer;
  const std::size_t n = cmd_convert(engine, in, buffer, config);
  auto out = open_output(out_path);
  out << buffer.str();
  return n;
}

SystemOutput load_system_output(const std::string& name, const std::string& path) {
  if (name.empty() || name.find_first_of("/\\") != std::string::npos) {
    throw FormatError("invalid system name '" + name + "'");
  }
  std::ifstream in(path);
  if (!in) throw ResourceError(path, "cannot open system output");
  SystemOutput s{name, {}};
  std::string line;
  while (std::getline(in, line)) s.sentences.push_back(tokenize_text(line));
  return s;
}

SystemOutput load_system_output(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw FormatError("system must be NAME=PATH, got '" + spec + "'");
  return load_system_output(spec.substr(0, eq), spec.substr(eq + 1));
}

ScoreResult score_systems(const Corpus& test, const std::vector<SystemOutput>& systems,
                          const Tagger& tagger, const RswVocabulary* vocabulary,
                          std::size_t threshold) {
  if (threshold < 1) throw std::invalid_argument("length threshold must be >= 1");
  std::vector<SentenceInputs> refs;
  std::vector<std::size_t> all, short_set, long_set;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto& e = test.entries[i];
    SentenceInputs s{&e.formal, {}, pos_tag(e.formal, tagger)};
    if (!e.alignments.empty()) {
      s.rsw = rsw_occurrences_from_alignments(e);
    } else if (vocabulary) {
      s.rsw = rsw_occurrences_from_vocabulary(e.formal, *vocabulary);
    }
    refs.push_back(std::move(s));
    all.push_back(i);
    (e.informal.size() <= threshold ? short_set : long_set).push_back(i);
  }

  ScoreResult result;
  for (const auto& sys : systems) {
    if (sys.sentences.size() != test.size()) {
      throw FormatError(sys.name, 0,
                        "has " + std::to_string(sys.sentences.size()) +
                            " sentences, test corpus has " + std::to_string(test.size()));
    }
    std::vector<TagSeq> tags;
    std::vector<PerSentenceScore> rows;
    for (std::size_t i = 0; i < test.size(); ++i) {
      const TokenSeq& hyp = sys.sentences[i];
      tags.push_back(pos_tag(hyp, tagger));
      PerSentenceScore row;
      row.index = i;
      row.bleu = sentence_bleu(hyp, *refs[i].reference);
      row.rouge1 = rouge_1(hyp, *refs[i].reference);
      row.rouge_l = rouge_l(hyp, *refs[i].reference);
      row.rsw = rsw_score(hyp, refs[i].rsw);
      row.tag_error = tag_error(tags.back(), refs[i].reference_tags);
      row.zwnj_mismatches = zwnj_diagnostic(hyp, *refs[i].reference);
      rows.push_back(row);
    }
    result.reports.push_back(score_subset(sys.name, "aggregated", all, sys.sentences, tags, refs));
    result.reports.push_back(score_subset(sys.name, "short", short_set, sys.sentences, tags, refs));
    result.reports.push_back(score_subset(sys.name, "long", long_set, sys.sentences, tags, refs));
    result.per_sentence.emplace_back(sys.name, std::move(rows));
  }
  return result;
}

ScoreResult cmd_score(const std::string& test_path, const std::vector<std::string>& system_specs,
                      const RunConfig& config) {
  if (system_specs.empty()) throw FormatError("no system outputs given");
  const Corpus test = ingest_parsmap(test_path);
  std::vector<SystemOutput> systems;
  std::vector<std::string> inputs{test_path};
  for (const auto& spec : system_specs) {
    systems.push_back(load_system_output(spec));
    inputs.push_back(spec.substr(spec.find('=') + 1));
  }
  const auto tagger = make_tagger(config, inputs);
  const auto lexicon = load_lexicon(config);
  std::optional<RswVocabulary> vocabulary;
  if (lexicon) vocabulary = rsw_vocabulary(*lexicon);

  ScoreResult result = score_systems(test, systems, *tagger,
                                     vocabulary ? &*vocabulary : nullptr, config.threshold);

  fs::create_directories(config.out_dir);
  const fs::path dir(config.out_dir);
  open_output((dir / "reports.json").string()) << to_json(result.reports);
  open_output((dir / "reports.tsv").string()) << to_tsv(result.reports);
  for (const auto& [name, rows] : result.per_sentence) {
    write_per_sentence(rows, (dir / (name + ".sentences.tsv")).string());
  }
  return result;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "tsv") return ReportFormat::kTsv;
  if (name == "json") return ReportFormat::kJson;
  if (name == "markdown") return ReportFormat::kMarkdown;
  throw FormatError("unknown report format '" + name + "' (expected tsv, json or markdown)");
}

std::string cmd_report(const std::string& in_path, ReportFormat format) {
  std::string path = in_path;
  if (fs::is_directory(path)) path = (fs::path(path) / "reports.json").string();
  const auto reports = load_reports(path);
  switch (format) {
    case ReportFormat::kTsv: return to_tsv(reports);
    case ReportFormat::kJson: return to_json(reports);
    case ReportFormat::kMarkdown: return to_markdown(reports);
  }
  return {};
}

SplitPaths cmd_split(const std::string& corpus_path, const RunConfig& config) {
  const Corpus corpus = ingest_parsmap(corpus_path);
  const auto [train, test] = split_train_test(corpus, config.seed);
  const auto [short_set, long_set] = split_by_length(test, config.threshold);

  fs::create_directories(config.out_dir);
  const fs::path dir(config.out_dir);
  const std::string stem = fs::path(corpus_path).stem().string();
  SplitPaths paths{(dir / (stem + ".train.tsv")).string(), (dir / (stem + ".test.tsv")).string(),
                   (dir / (stem + ".short.tsv")).string(), (dir / (stem + ".long.tsv")).string()};
  write_parsmap_file(train, paths.train);
  write_parsmap_file(test, paths.test);
  write_parsmap_file(short_set, paths.short_set);
  write_parsmap_file(long_set, paths.long_set);
  return paths;
}

TrainDemoResult cmd_train_demo(const TrainConfig& config, std::ostream& log) {
  TrainDemoResult result = run_train_demo(config);
  for (const TrainingRun* run : {&result.consistency, &result.supervised}) {
    for (std::size_t step = 0; step < run->log.size(); ++step) {
      const LossBreakdown& b = run->log[step];
      const nlohmann::ordered_json row = {{"run", run->name},          {"step", step},
                                          {"L_sup", b.loss_sup},       {"L_cons", b.loss_cons},
                                          {"alpha_sup", b.alpha_sup},  {"alpha_cons", b.alpha_cons},
                                          {"L_total", b.loss_total}};
      log << row.dump() << '\n';
    }
  }
  return result;
}

std::string train_demo_table(const TrainDemoResult& result) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "| Model | Exact Match | Token Accuracy | BLEU Score | Rouge-L |\n";
  os << "|---|---|---|---|---|\n";
  const std::pair<const char*, const TrainingRun*> rows[] = {
      {"TinySeq2Seq with gradient-based consistency learning", &result.consistency},
      {"TinySeq2Seq with standard training", &result.supervised}};
  for (const auto& [label, run] : rows) {
    const auto& e = run->evaluation;
    os << "| " << label << " | " << e.exact_match << " | " << e.token_accuracy << " | " << e.bleu
       << " | " << e.rouge_l << " |\n";
  }
  return os.str();
}

}  // namespace formality
