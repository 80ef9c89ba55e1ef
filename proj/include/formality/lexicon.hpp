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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "formality/text.hpp"

namespace formality {

struct FormalCount {
  std::string formal;
  std::int64_t count = 0;
  friend bool operator==(const FormalCount&, const FormalCount&) = default;
};

/// Informal word (or space-joined phrase) to its aligned formal equivalents,
/// each list ordered by descending count, then ascending formal string.
class AlignmentLexicon {
 public:
  using Entries = std::map<std::string, std::vector<FormalCount>>;

  void add(const std::string& informal, const std::string& formal, std::int64_t count = 1);

  const Entries& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  bool contains(const std::string& informal) const { return entries_.count(informal) != 0; }
  const std::vector<FormalCount>* find(const std::string& informal) const;

  /// Export as "informal<TAB>formal<TAB>count" rows (informal asc, count desc).
  void save(std::ostream& out) const;
  static AlignmentLexicon load(std::istream& in, const std::string& source = "lexicon");
  static AlignmentLexicon load_file(const std::string& path);

  friend bool operator==(const AlignmentLexicon&, const AlignmentLexicon&) = default;

 private:
  Entries entries_;
};

/// Counts every aligned (informal, formal) pair of the corpus. Multi-token
/// ranges contribute one space-joined phrase pair. Throws
/// std::invalid_argument if no entry carries alignments.
AlignmentLexicon build_lexicon(const Corpus& corpus);

/// Highest-count formal equivalent; equal counts resolve to the
/// lexicographically smaller formal string.
std::optional<std::string> most_frequent_equivalent(const AlignmentLexicon& lexicon,
                                                    const std::string& word);

/// Context-blind per-token replacement. Multi-token equivalents are spliced.
TokenSeq dictionary_convert(const TokenSeq& sentence, const AlignmentLexicon& lexicon);

using RswVocabulary = std::map<std::string, std::set<std::string>>;

/// Formal words that are the formal side of at least one single-token pair
/// whose informal side differs, mapped to those informal counterparts.
RswVocabulary rsw_vocabulary(const AlignmentLexicon& lexicon);

}  // namespace formality
