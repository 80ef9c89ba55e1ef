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
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "formality/text.hpp"

namespace formality {

/// Unsmoothed unigram/bigram/trigram counts over a sentence stream. N-grams
/// never cross sentence boundaries.
class TrigramStore {
 public:
  using Counts = std::unordered_map<std::string, std::int64_t>;

  void ingest(const TokenSeq& sentence);
  void ingest(std::span<const TokenSeq> sentences);

  /// After freeze() the store rejects further ingestion.
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  /// Count of a 1- to 3-token n-gram; 0 when absent. Throws
  /// std::invalid_argument for any other length.
  std::int64_t count(std::span<const std::string> ngram) const;
  std::int64_t count(std::initializer_list<std::string> ngram) const;

  std::int64_t total_tokens() const { return total_tokens_; }
  const Counts& counts(int order) const;

  // Snapshot TSV: "#1", "#2", "#3" section markers, then rows of
  // tab-separated tokens followed by the count. Rows are sorted.
  void save(std::ostream& out) const;
  static TrigramStore load(std::istream& in, const std::string& source = "snapshot");

  friend bool operator==(const TrigramStore& a, const TrigramStore& b) {
    return a.total_tokens_ == b.total_tokens_ && a.counts1_ == b.counts1_ &&
           a.counts2_ == b.counts2_ && a.counts3_ == b.counts3_;
  }

  /// Joins tokens with the key separator used internally.
  static std::string key(std::span<const std::string> tokens);

 private:
  Counts counts1_, counts2_, counts3_;
  std::int64_t total_tokens_ = 0;
  bool frozen_ = false;
};

/// Reads a plain-text corpus (one sentence per line), normalizing each line.
TrigramStore build_trigram_store(std::istream& in);
TrigramStore build_trigram_store_file(const std::string& path);

}  // namespace formality
