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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "formality/lexicon.hpp"
#include "formality/text.hpp"

namespace formality {

// All scores are on a 0-100 scale.

/// Clipped n-gram statistics for one or more sentence pairs, n = 1..4.
struct BleuStats {
  static constexpr int kMaxOrder = 4;
  std::int64_t matches[kMaxOrder] = {0, 0, 0, 0};
  std::int64_t totals[kMaxOrder] = {0, 0, 0, 0};
  std::int64_t hyp_length = 0;
  std::int64_t ref_length = 0;

  BleuStats& operator+=(const BleuStats& o);
};

BleuStats bleu_stats(const TokenSeq& hypothesis, const TokenSeq& reference);

/// Unsmoothed corpus BLEU. Orders with no hypothesis n-grams in the whole
/// corpus are left out of the geometric mean.
double bleu_from_stats(const BleuStats& stats);

/// Corpus BLEU with one reference per hypothesis. Throws
/// std::invalid_argument on empty or mismatched lists.
double bleu(std::span<const TokenSeq> hypotheses, std::span<const TokenSeq> references);

/// Sentence BLEU with add-one smoothing for zero-match orders above 1.
/// For display only; corpus scores never use it.
double sentence_bleu(const TokenSeq& hypothesis, const TokenSeq& reference);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

/// LCS F1. Both empty scores 100, one empty scores 0.
double rouge_l(const TokenSeq& hypothesis, const TokenSeq& reference);
/// Clipped unigram-overlap F1, same empty-input conventions as rouge_l.
double rouge_1(const TokenSeq& hypothesis, const TokenSeq& reference);

double rouge_l_corpus(std::span<const TokenSeq> hypotheses, std::span<const TokenSeq> references);
double rouge_1_corpus(std::span<const TokenSeq> hypotheses, std::span<const TokenSeq> references);

// --- Register-specific words ---------------------------------------------

struct RswCounts {
  std::int64_t converted = 0;
  std::int64_t total = 0;
  RswCounts& operator+=(const RswCounts& o) {
    converted += o.converted;
    total += o.total;
    return *this;
  }
};

/// Formal tokens of single-token alignments whose two sides differ.
std::vector<std::string> rsw_occurrences_from_alignments(const AlignedPair& pair);
/// Reference tokens that belong to the RSW vocabulary.
std::vector<std::string> rsw_occurrences_from_vocabulary(const TokenSeq& reference,
                                                         const RswVocabulary& vocabulary);

/// Multiset intersection of generated tokens with the reference RSW
/// occurrences; each occurrence is matched at most once.
RswCounts rsw_counts(const TokenSeq& generated, std::span<const std::string> rsw_occurrences);

/// Per-sentence percentage; absent when the reference has no RSWs.
std::optional<double> rsw_score(const TokenSeq& generated, std::span<const std::string> rsw_occurrences);

/// 100 * converted / total over the corpus; absent when total is 0.
std::optional<double> rsw_corpus_score(const RswCounts& totals);

// --- Tag matching ---------------------------------------------------------

struct TagSeq {
  std::vector<std::string> tags;
  std::size_t size() const { return tags.size(); }
  bool empty() const { return tags.empty(); }
  friend bool operator==(const TagSeq&, const TagSeq&) = default;
};

/// Unit-cost Levenshtein distance over label sequences.
std::size_t edit_distance(std::span<const std::string> a, std::span<const std::string> b);

/// edit_distance / max(len); 0 when both are empty.
double tag_error(const TagSeq& generated, const TagSeq& reference);

struct TagPair {
  TagSeq generated;
  TagSeq reference;
};

/// 100 * (1 - mean per-sentence tag error). Throws on an empty list.
double tag_matching_score(std::span<const TagPair> pairs);

/// Harmonic mean of RSW and TMS; 0 when both are 0.
double fti(double rsw, double tms);

/// Reference tokens containing ZWNJ whose pieces appear as adjacent
/// space-separated tokens in the generated sentence.
std::size_t zwnj_diagnostic(const TokenSeq& generated, const TokenSeq& reference);

}  // namespace formality
