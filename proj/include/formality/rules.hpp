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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "formality/lexicon.hpp"
#include "formality/ngram.hpp"
#include "formality/text.hpp"

namespace formality {

enum class RuleKind { kSuffixRewrite, kEncliticRewrite, kWholeWord };

std::string_view to_string(RuleKind kind);
std::optional<RuleKind> parse_rule_kind(std::string_view s);

// A stem wildcard only matches stems of at least this many code points.
inline constexpr std::size_t kMinStemLength = 2;

/// One rewrite. Whole-word rules match the literal word. Suffix and enclitic
/// rules match "<stem><suffix>" and substitute the stem for '*' in the
/// replacement; a guard suffix blocks the rule when the word ends with it.
struct ConversionRule {
  std::string id;
  RuleKind kind = RuleKind::kWholeWord;
  std::string pattern;  // literal suffix, or the whole word
  std::vector<std::string> guards;
  std::string replacement;
  std::string description;

  /// The normalized candidate this rule produces for \p word, if it matches.
  std::optional<std::string> apply(const std::string& word) const;
};

/// Deduplicated candidates in insertion order.
class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::string word) : word_(std::move(word)) {}

  void add(const std::string& candidate);
  const std::string& word() const { return word_; }
  const std::vector<std::string>& candidates() const { return candidates_; }
  std::size_t size() const { return candidates_.size(); }
  bool empty() const { return candidates_.empty(); }

 private:
  std::string word_;
  std::vector<std::string> candidates_;
};

class RuleSet {
 public:
  RuleSet() = default;
  explicit RuleSet(std::vector<ConversionRule> rules) : rules_(std::move(rules)) {}

  const std::vector<ConversionRule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }

  // "id<TAB>kind<TAB>match<TAB>replacement<TAB>description"; match is
  // "*suffix", or a whole word, followed by optional space-separated
  // "!guard" suffixes. '#' lines are comments.
  static RuleSet load(std::istream& in, const std::string& source = "rules");
  static RuleSet load_file(const std::string& path);

 private:
  std::vector<ConversionRule> rules_;
};

CandidateSet apply_rules(const std::string& word, const RuleSet& rules);

/// Picks among >= 1 candidates by the count of (prev2, prev1, first token of
/// candidate), backing off to the bigram and then the unigram when every
/// candidate scores zero. Ties keep the earliest candidate.
std::string best_equivalent(std::span<const std::string> candidates,
                            std::span<const std::string> left_context,
                            const TrigramStore* trigrams);

/// Tries every split point, keeping splits whose fragments both resolve via
/// rules or lexicon; the right fragment may be split again while the
/// fragment budget allows. Fragments are ZWNJ-trimmed and the results are
/// the converted fragments joined by a space.
CandidateSet split_and_retry(const std::string& word, const RuleSet& rules,
                             const AlignmentLexicon* lexicon = nullptr,
                             std::size_t max_fragments = 2);

/// One word to its output tokens: a single candidate is taken as is,
/// several go through best_equivalent, none fall back to the lexicon, then
/// split_and_retry, then the word itself.
std::vector<std::string> dispatch(const std::string& word, const CandidateSet& candidates,
                                  std::span<const std::string> left_context,
                                  const RuleSet& rules, const TrigramStore* trigrams,
                                  const AlignmentLexicon* lexicon = nullptr);

TokenSeq convert_sentence(const TokenSeq& sentence, const RuleSet& rules,
                          const TrigramStore* trigrams,
                          const AlignmentLexicon* lexicon = nullptr);

}  // namespace formality
