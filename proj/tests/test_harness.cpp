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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <doctest.h>

#include "formality/errors.hpp"
#include "formality/harness.hpp"
#include "formality/lexicon.hpp"

using namespace formality;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("formality-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

Corpus mixed_corpus() {
  Corpus c = ingest_parsmap(FIXTURE_DIR "/parsmap20.tsv");
  for (auto& e : ingest_parsmap(FIXTURE_DIR "/long_pairs.tsv").entries) c.entries.push_back(e);
  return c;
}

std::string formal_lines(const Corpus& c) {
  std::string out;
  for (const auto& e : c.entries) out += e.formal.raw() + "\n";
  return out;
}

}  // namespace

TEST_CASE("convert on an empty input writes an empty file") {
  TempDir dir;
  write(dir.file("in.txt"), "");
  RunConfig cfg;
  cfg.rules = DATA_DIR "/rules.tsv";
  CHECK(cmd_convert(Engine::kRules, dir.file("in.txt"), dir.file("out.txt"), cfg) == 0);
  CHECK(fs::exists(dir.file("out.txt")));
  CHECK(slurp(dir.file("out.txt")).empty());
}

TEST_CASE("dict engine with the corpus lexicon") {
  RunConfig cfg;
  cfg.corpus = FIXTURE_DIR "/parsmap20.tsv";
  std::istringstream in("کتابش رو\n");
  std::ostringstream out;
  CHECK(cmd_convert(Engine::kDict, in, out, cfg) == 1);
  CHECK(out.str() == "کتابش را\n");
}

TEST_CASE("rules engine one sentence per line") {
  RunConfig cfg;
  cfg.rules = DATA_DIR "/rules.tsv";
  std::istringstream in("کتابش رو\n\nقشنگن\n");
  std::ostringstream out;
  CHECK(cmd_convert(Engine::kRules, in, out, cfg) == 3);
  CHECK(out.str() == "کتابش را\n\nقشنگ هستند\n");
}

TEST_CASE("missing resources name the resource") {
  RunConfig cfg;
  std::istringstream in("x\n");
  std::ostringstream out;
  try {
    cmd_convert(Engine::kRules, in, out, cfg);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.resource() == "rules");
  }
  CHECK_THROWS_AS(cmd_convert(Engine::kDict, in, out, cfg), ResourceError);
  cfg.rules = "/nonexistent/rules.tsv";
  try {
    cmd_convert(Engine::kRules, in, out, cfg);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.resource() == "/nonexistent/rules.tsv");
  }
}

TEST_CASE("identity output scores 100 on all three sets") {
  const Corpus test = mixed_corpus();
  const std::vector<SystemOutput> systems{{"gold", [&] {
                                             std::vector<TokenSeq> v;
                                             for (const auto& e : test.entries) v.push_back(e.formal);
                                             return v;
                                           }()}};
  const LexiconTagger tagger = LexiconTagger::load_file(DATA_DIR "/pos_lexicon.tsv");
  const ScoreResult r = score_systems(test, systems, tagger, nullptr);
  REQUIRE(r.reports.size() == 3);
  CHECK(r.reports[0].test_set == "aggregated");
  CHECK(r.reports[1].test_set == "short");
  CHECK(r.reports[2].test_set == "long");
  CHECK(r.reports[0].sentences == 23);
  CHECK(r.reports[2].sentences == 3);
  for (const auto& rep : r.reports) {
    CAPTURE(rep.test_set);
    CHECK(*rep.bleu == doctest::Approx(100.0));
    CHECK(*rep.rouge1 == 100.0);
    CHECK(*rep.rouge_l == 100.0);
    CHECK(*rep.rsw == 100.0);
    CHECK(*rep.tms == 100.0);
    CHECK(*rep.fti == doctest::Approx(100.0));
    CHECK(rep.zwnj_mismatches == 0);
    CHECK(fti_consistent(rep));
  }
}

TEST_CASE("engine path equals file path for the dictionary engine") {
  TempDir dir;
  const std::string test_path = FIXTURE_DIR "/parsmap20.tsv";
  const Corpus test = ingest_parsmap(test_path);
  std::string informal;
  for (const auto& e : test.entries) informal += e.informal.raw() + "\n";
  write(dir.file("informal.txt"), informal);

  RunConfig cfg;
  cfg.corpus = test_path;
  cfg.out_dir = dir.file("scores");
  cmd_convert(Engine::kDict, dir.file("informal.txt"), dir.file("dict.txt"), cfg);
  const ScoreResult via_file = cmd_score(test_path, {"dict=" + dir.file("dict.txt")}, cfg);

  const AlignmentLexicon lex = build_lexicon(test);
  SystemOutput direct{"dict", {}};
  for (const auto& e : test.entries) direct.sentences.push_back(dictionary_convert(e.informal, lex));
  const LexiconTagger tagger;
  const RswVocabulary vocab = rsw_vocabulary(lex);
  const ScoreResult via_engine = score_systems(test, {direct}, tagger, &vocab);

  CHECK(via_file.reports == via_engine.reports);
  CHECK(fs::exists(dir.file("scores/reports.json")));
  CHECK(fs::exists(dir.file("scores/reports.tsv")));
  CHECK(fs::exists(dir.file("scores/dict.sentences.tsv")));
}

TEST_CASE("misaligned system output is a format error") {
  const Corpus test = ingest_parsmap(FIXTURE_DIR "/parsmap20.tsv");
  SystemOutput short_output{"x", {tokenize_text("a")}};
  const LexiconTagger tagger;
  CHECK_THROWS_AS(score_systems(test, {short_output}, tagger, nullptr), FormatError);
}

TEST_CASE("scores do not depend on sentence order") {
  Corpus test = mixed_corpus();
  const AlignmentLexicon lex = build_lexicon(test);
  SystemOutput out{"dict", {}};
  for (const auto& e : test.entries) out.sentences.push_back(dictionary_convert(e.informal, lex));
  const LexiconTagger tagger;
  const auto a = score_systems(test, {out}, tagger, nullptr);

  std::vector<std::size_t> order(test.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = (i * 7 + 3) % order.size();
  Corpus permuted{test.name, {}};
  SystemOutput permuted_out{"dict", {}};
  for (std::size_t i : order) {
    permuted.entries.push_back(test.entries[i]);
    permuted_out.sentences.push_back(out.sentences[i]);
  }
  const auto b = score_systems(permuted, {permuted_out}, tagger, nullptr);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(*a.reports[k].bleu == *b.reports[k].bleu);
    CHECK(*a.reports[k].rouge_l == doctest::Approx(*b.reports[k].rouge_l).epsilon(1e-12));
    CHECK(*a.reports[k].rouge1 == doctest::Approx(*b.reports[k].rouge1).epsilon(1e-12));
    CHECK(*a.reports[k].rsw == *b.reports[k].rsw);
    CHECK(*a.reports[k].tms == doctest::Approx(*b.reports[k].tms).epsilon(1e-12));
  }
}

TEST_CASE("sidecar tagging through cmd_score") {
  TempDir dir;
  const std::string test_path = FIXTURE_DIR "/parsmap20.tsv";
  write(dir.file("gold.txt"), formal_lines(ingest_parsmap(test_path)));
  RunConfig cfg;
  cfg.tagger = "sidecar";
  cfg.sidecars = {FIXTURE_DIR "/parsmap20.formal.tags"};
  cfg.out_dir = dir.file("scores");
  const auto r = cmd_score(test_path, {"gold=" + dir.file("gold.txt")}, cfg);
  CHECK(*r.reports[0].tms == 100.0);
  CHECK_FALSE(r.reports[2].bleu.has_value());
  CHECK(r.reports[2].sentences == 0);

  cfg.sidecars.clear();
  CHECK_THROWS_AS(cmd_score(test_path, {"gold=" + dir.file("gold.txt")}, cfg), ResourceError);
}

TEST_CASE("report renders a score directory") {
  TempDir dir;
  const std::string test_path = FIXTURE_DIR "/parsmap20.tsv";
  write(dir.file("gold.txt"), formal_lines(ingest_parsmap(test_path)));
  RunConfig cfg;
  cfg.out_dir = dir.file("scores");
  cmd_score(test_path, {"gold=" + dir.file("gold.txt")}, cfg);

  const std::string md = cmd_report(dir.file("scores"), ReportFormat::kMarkdown);
  CHECK(md.find("| gold | 100.00 |") != std::string::npos);
  write(dir.file("r.json"), cmd_report(dir.file("scores"), ReportFormat::kJson));
  write(dir.file("r.tsv"), cmd_report(dir.file("r.json"), ReportFormat::kTsv));
  CHECK(load_reports(dir.file("r.tsv")) == load_reports(dir.file("scores/reports.json")));
  CHECK_THROWS_AS(parse_report_format("xml"), FormatError);
}

TEST_CASE("split writes four corpora") {
  TempDir dir;
  const Corpus c = mixed_corpus();
  write_parsmap_file(c, dir.file("mixed.tsv"));
  RunConfig cfg;
  cfg.seed = 9;
  cfg.out_dir = dir.file("split");
  const SplitPaths p = cmd_split(dir.file("mixed.tsv"), cfg);
  const auto train = ingest_parsmap(p.train);
  const auto test = ingest_parsmap(p.test);
  const auto s = ingest_parsmap(p.short_set);
  const auto l = ingest_parsmap(p.long_set);
  CHECK(train.size() == 19);
  CHECK(test.size() == 4);
  CHECK(s.size() + l.size() == test.size());
}

TEST_CASE("train demo writes one JSON line per log entry") {
  TrainConfig cfg;
  cfg.steps = 0;
  std::ostringstream log;
  const auto r = cmd_train_demo(cfg, log);
  std::istringstream lines(log.str());
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    ++n;
    for (const char* key : {"\"step\"", "\"L_sup\"", "\"L_cons\"", "\"alpha_sup\"",
                            "\"alpha_cons\"", "\"L_total\""}) {
      CHECK(line.find(key) != std::string::npos);
    }
  }
  CHECK(n == 2);
  const std::string table = train_demo_table(r);
  CHECK(table.find("| Model | Exact Match |") != std::string::npos);
}

TEST_CASE("engine and format names") {
  CHECK(parse_engine("rules") == Engine::kRules);
  CHECK(parse_engine("dict") == Engine::kDict);
  CHECK_THROWS_AS(parse_engine("neural"), FormatError);
  CHECK_THROWS_AS(load_system_output("no-equals-sign"), FormatError);
  CHECK_THROWS_AS(load_system_output("a/b=x"), FormatError);
}
