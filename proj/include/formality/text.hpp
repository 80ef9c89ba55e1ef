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
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace formality {

/// Canonical form of a sentence: NFC, Arabic letter variants folded to their
/// Persian forms, whitespace collapsed to single spaces, ZWNJ kept only
/// between two non-space characters.
std::string normalize(std::string_view text);

/// A whitespace-tokenized sentence. Tokens never contain a space and never
/// start or end with ZWNJ; `raw()` is the tokens joined by single spaces.
class TokenSeq {
 public:
  TokenSeq() = default;
  /// Tokens are taken as given; throws FormatError if any violates the
  /// invariants above.
  explicit TokenSeq(std::vector<std::string> tokens);

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  std::string raw() const;

  auto begin() const { return tokens_.begin(); }
  auto end() const { return tokens_.end(); }

  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;

 private:
  std::vector<std::string> tokens_;
};

/// Splits already-normalized text on spaces.
TokenSeq tokenize(std::string_view normalized);

/// normalize() followed by tokenize().
TokenSeq tokenize_text(std::string_view text);

/// Half-open token index range.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  friend bool operator==(const TokenRange&, const TokenRange&) = default;
};

struct Alignment {
  TokenRange informal;
  TokenRange formal;
  friend bool operator==(const Alignment&, const Alignment&) = default;
};

struct AlignedPair {
  TokenSeq informal;
  TokenSeq formal;
  std::string source;
  std::vector<Alignment> alignments;

  friend bool operator==(const AlignedPair&, const AlignedPair&) = default;
};

/// Checks that every range is non-empty, in bounds, and non-overlapping on
/// its side. Returns an empty string when valid, else the reason.
std::string validate_alignments(const AlignedPair& pair);

struct Corpus {
  std::string name;
  std::vector<AlignedPair> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// ParsMap TSV: informal<TAB>formal<TAB>source[<TAB>alignments]
// alignments: "i0-i1:f0-f1;..." half-open ranges. '#' lines are comments.
Corpus parse_parsmap(std::istream& in, const std::string& name);
/// Throws ResourceError when the file cannot be opened, FormatError with the
/// line number on a malformed row.
Corpus ingest_parsmap(const std::string& path);
void write_parsmap(const Corpus& corpus, std::ostream& out);
void write_parsmap_file(const Corpus& corpus, const std::string& path);

std::string format_alignments(const std::vector<Alignment>& alignments);
std::vector<Alignment> parse_alignments(std::string_view field);

/// Seeded shuffle; the first ceil(0.8 N) entries become the training set.
std::pair<Corpus, Corpus> split_train_test(const Corpus& corpus, std::uint64_t seed);

inline constexpr std::size_t kDefaultLengthThreshold = 11;

/// Informal length <= threshold goes to the short set, the rest to long.
std::pair<Corpus, Corpus> split_by_length(const Corpus& test,
                                          std::size_t threshold = kDefaultLengthThreshold);

}  // namespace formality
