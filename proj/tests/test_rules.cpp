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

#include <fstream>
#include <sstream>

#include <doctest.h>

#include "formality/errors.hpp"
#include "formality/rules.hpp"

using namespace formality;

namespace {

const std::string kZ = "‌";

const RuleSet& rules() {
  static const RuleSet r = RuleSet::load_file(DATA_DIR "/rules.tsv");
  return r;
}

TrigramStore store_of(std::initializer_list<const char*> lines) {
  TrigramStore s;
  for (const char* l : lines) s.ingest(tokenize_text(l));
  s.freeze();
  return s;
}

std::string convert(const std::string& text, const TrigramStore* trigrams = nullptr) {
  return convert_sentence(tokenize_text(text), rules(), trigrams).raw();
}

}  // namespace

TEST_CASE("Table 2 fixture converts to the formal column") {
  std::ifstream in(FIXTURE_DIR "/table2.tsv");
  REQUIRE(in);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    CHECK(convert(line.substr(0, tab)) == normalize(line.substr(tab + 1)));
    ++rows;
  }
  CHECK(rows == 7);
}

TEST_CASE("plural suffix rewrite and its guards") {
  CHECK(convert("باغا") == "باغ" + kZ + "ها");
  CHECK(convert("اینجا") == "اینجا");
  // a one-letter stem is too short for the wildcard
  CHECK(convert("را") == "را");
}

TEST_CASE("copula rewrite keeps guarded endings") {
  CHECK(convert("قشنگن") == "قشنگ هستند");
  CHECK(convert("ایران") == "ایران");
  CHECK(convert("خون") == "خون");
}

TEST_CASE("enclitic possessives") {
  CHECK(convert("کتابشون") == "کتابشان");
  CHECK(convert("انرژی شون") == "انرژی شان");
}

TEST_CASE("apply_rules collects every matching rule in file order") {
  const CandidateSet c = apply_rules("خونم", rules());
  REQUIRE(c.size() == 2);
  CHECK(c.candidates()[0] == "خانه" + kZ + "ام");
  CHECK(c.candidates()[1] == "خون من");
  CHECK(apply_rules("سلام", rules()).empty());
}

TEST_CASE("CandidateSet deduplicates and keeps order") {
  CandidateSet c("w");
  c.add("b");
  c.add("a");
  c.add("b");
  REQUIRE(c.size() == 2);
  CHECK(c.candidates()[0] == "b");
  CHECK(c.candidates()[1] == "a");
}

TEST_CASE("best_equivalent uses the trigram of the two preceding words") {
  const TrigramStore s = store_of({"ریختن خون من را", "ریختن خون من", "به خانه‌ام رفتم"});
  const std::vector<std::string> cands{"خانه" + kZ + "ام", "خون من"};
  const std::vector<std::string> ctx{"اجازه", "ریختن"};
  // no trigram for either; bigram (ریختن, خون) wins
  CHECK(best_equivalent(cands, ctx, &s) == "خون من");
  const std::vector<std::string> ctx2{"به", "رفتم"};
  // no trigram, no bigram: unigram خانه‌ام (1) vs خون (2)
  CHECK(best_equivalent(cands, ctx2, &s) == "خون من");
}

TEST_CASE("best_equivalent prefers the trigram over lower orders") {
  const TrigramStore s = store_of({"a b x", "c y", "c y", "y y y"});
  const std::vector<std::string> cands{"y", "x"};
  const std::vector<std::string> ctx{"a", "b"};
  CHECK(best_equivalent(cands, ctx, &s) == "x");
}

TEST_CASE("best_equivalent ties go to the earliest candidate") {
  const TrigramStore s = store_of({"p q"});
  const std::vector<std::string> cands{"m", "n"};
  const std::vector<std::string> ctx{"a", "b"};
  CHECK(best_equivalent(cands, ctx, &s) == "m");
  CHECK(best_equivalent(cands, ctx, nullptr) == "m");
}

TEST_CASE("convert_sentence selects by context") {
  const TrigramStore s = store_of({"از بینی خون من آمد", "رفتم به خانه‌ام"});
  CHECK(convert("از بینی خونم آمد", &s) == "از بینی خون من آمد");
  CHECK(convert("رفتم به خونم", &s) == "رفتم به خانه" + kZ + "ام");
}

TEST_CASE("split_and_retry splits a word with no rule") {
  const CandidateSet c = split_and_retry("نمی" + kZ + "دونم", rules());
  REQUIRE_FALSE(c.empty());
  CHECK(c.candidates()[0] == "نمی دانم");
  CHECK(split_and_retry("میتونم", rules()).candidates().at(0) == "می توانم");
}

TEST_CASE("dispatch echoes words nothing can resolve") {
  const std::vector<std::string> ctx;
  const std::string word = "زخرفق";
  CHECK(dispatch(word, apply_rules(word, rules()), ctx, rules(), nullptr) ==
        std::vector<std::string>{word});
}

TEST_CASE("dispatch falls back to the lexicon before splitting") {
  AlignmentLexicon lex;
  lex.add("یه", "یک", 3);
  const std::vector<std::string> ctx;
  CHECK(dispatch("یه", apply_rules("یه", rules()), ctx, rules(), nullptr, &lex) ==
        std::vector<std::string>{"یک"});
}

TEST_CASE("rule loading validates rows") {
  std::istringstream bad_kind("r1\tweird\tx\ty\td\n");
  CHECK_THROWS_AS(RuleSet::load(bad_kind), FormatError);
  std::istringstream few_cols("r1\twhole-word\tx\n");
  CHECK_THROWS_AS(RuleSet::load(few_cols), FormatError);
  std::istringstream whole_with_star("r1\twhole-word\t*x\ty\td\n");
  CHECK_THROWS_AS(RuleSet::load(whole_with_star), FormatError);
  std::istringstream ok("# c\nr1\tsuffix-rewrite\t*x !yx\t*z\tdesc\n");
  const RuleSet r = RuleSet::load(ok);
  REQUIRE(r.size() == 1);
  CHECK(r.rules()[0].guards == std::vector<std::string>{"yx"});
  CHECK(r.rules()[0].apply("abx") == std::optional<std::string>("abz"));
  CHECK_FALSE(r.rules()[0].apply("ayx").has_value());
  CHECK_FALSE(r.rules()[0].apply("ax").has_value());
  CHECK_THROWS_AS(RuleSet::load_file("/nonexistent/rules.tsv"), ResourceError);
}

TEST_CASE("rule kinds round-trip through their names") {
  for (RuleKind k : {RuleKind::kSuffixRewrite, RuleKind::kEncliticRewrite, RuleKind::kWholeWord}) {
    CHECK(parse_rule_kind(to_string(k)) == k);
  }
  CHECK_FALSE(parse_rule_kind("nope").has_value());
}
