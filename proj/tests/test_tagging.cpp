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

#include <sstream>

#include <doctest.h>

#include "formality/errors.hpp"
#include "formality/tagging.hpp"

using namespace formality;

TEST_CASE("lexicon tagger looks words up first") {
  const LexiconTagger t = LexiconTagger::load_file(DATA_DIR "/pos_lexicon.tsv");
  CHECK(t.tag_word("را") == "POSTP");
  CHECK(t.tag_word("در") == "P");
  const TagSeq tags = pos_tag(tokenize_text("کتاب را"), t);
  REQUIRE(tags.size() == 2);
  CHECK(tags.tags[1] == "POSTP");
}

TEST_CASE("lexicon tagger heuristics and fallback") {
  const LexiconTagger t;
  CHECK(t.tag_word("۱۲۳") == "NUM");
  CHECK(t.tag_word("42") == "NUM");
  CHECK(t.tag_word("،") == "PUNC");
  CHECK(t.tag_word("می‌روم") == "V");
  CHECK(t.tag_word("نمی‌دانم") == "V");
  CHECK(t.tag_word("باغ‌ها") == "N");
  CHECK(t.tag_word("بزرگ‌تر") == "ADJ");
  CHECK(t.tag_word("زخرفق") == "X");
  CHECK(pos_tag(TokenSeq{}, t).empty());
}

TEST_CASE("sidecar tags pass through verbatim") {
  std::istringstream in("کتاب/N را/POSTP بده/V\nسلام/INTJ\n");
  const auto sentences = parse_sidecar(in);
  REQUIRE(sentences.size() == 2);
  const SidecarTagger t(sentences);
  CHECK(pos_tag(tokenize_text("کتاب را بده"), t).tags ==
        std::vector<std::string>{"N", "POSTP", "V"});
  CHECK_THROWS_AS(pos_tag(tokenize_text("ناموجود"), t), FormatError);

  std::ostringstream out;
  write_sidecar(sentences, out);
  CHECK(out.str() == "کتاب/N را/POSTP بده/V\nسلام/INTJ\n");
}

TEST_CASE("sidecar items must be token/TAG") {
  std::istringstream bad("کتاب N\n");
  CHECK_THROWS_AS(parse_sidecar(bad), FormatError);
  std::istringstream trailing("کتاب/\n");
  CHECK_THROWS_AS(parse_sidecar(trailing), FormatError);
  CHECK_THROWS_AS(load_sidecar("/nonexistent/x.tags"), ResourceError);
}

TEST_CASE("fixture sidecar covers the fixture references") {
  const auto sentences = load_sidecar(FIXTURE_DIR "/parsmap20.formal.tags");
  CHECK(sentences.size() == 20);
  for (const auto& s : sentences) CHECK(s.tokens.size() == s.tags.size());
}
