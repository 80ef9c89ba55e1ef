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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "formality/metrics.hpp"
#include "formality/text.hpp"

namespace formality {

inline constexpr const char* kUnknownTag = "X";

/// Source of one POS tag per token.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual TagSeq tag(const TokenSeq& sentence) const = 0;
};

inline TagSeq pos_tag(const TokenSeq& sentence, const Tagger& tagger) {
  return tagger.tag(sentence);
}

/// Unigram lexicon lookup; unknown tokens fall back to a few suffix and
/// prefix heuristics, then to kUnknownTag.
class LexiconTagger : public Tagger {
 public:
  LexiconTagger() = default;
  explicit LexiconTagger(std::map<std::string, std::string> lexicon)
      : lexicon_(std::move(lexicon)) {}

  TagSeq tag(const TokenSeq& sentence) const override;
  std::string tag_word(const std::string& word) const;

  /// "word<TAB>TAG" rows; the first tag listed for a word wins.
  static LexiconTagger load(std::istream& in, const std::string& source = "tag-lexicon");
  static LexiconTagger load_file(const std::string& path);

 private:
  std::map<std::string, std::string> lexicon_;
};

struct TaggedSentence {
  TokenSeq tokens;
  TagSeq tags;
};

/// Sidecar lines: space-separated "token/TAG" items, one sentence per line.
std::vector<TaggedSentence> parse_sidecar(std::istream& in, const std::string& source = "sidecar");
std::vector<TaggedSentence> load_sidecar(const std::string& path);
void write_sidecar(const std::vector<TaggedSentence>& sentences, std::ostream& out);

/// Returns the pre-computed tags of a sentence verbatim.
class SidecarTagger : public Tagger {
 public:
  explicit SidecarTagger(std::vector<TaggedSentence> sentences);

  /// Throws FormatError when the sentence is not in the sidecar.
  TagSeq tag(const TokenSeq& sentence) const override;
  const std::vector<TaggedSentence>& sentences() const { return sentences_; }

 private:
  std::vector<TaggedSentence> sentences_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace formality
