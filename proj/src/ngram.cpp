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

#include "formality/ngram.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "formality/errors.hpp"
#include "formality/unicode.hpp"

namespace formality {

namespace {
// Tokens are whitespace-free, so a tab cannot occur inside one.
constexpr char kSep = '\t';
}  // namespace

std::string TrigramStore::key(std::span<const std::string> tokens) {
  std::string k;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) k += kSep;
    k += tokens[i];
  }
  return k;
}

void TrigramStore::ingest(const TokenSeq& sentence) {
  if (frozen_) throw std::logic_error("TrigramStore is frozen");
  const auto& t = sentence.tokens();
  const std::span<const std::string> all(t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    ++counts1_[t[i]];
    if (i + 2 <= t.size()) ++counts2_[key(all.subspan(i, 2))];
    if (i + 3 <= t.size()) ++counts3_[key(all.subspan(i, 3))];
  }
  total_tokens_ += static_cast<std::int64_t>(t.size());
}

void TrigramStore::ingest(std::span<const TokenSeq> sentences) {
  for (const auto& s : sentences) ingest(s);
}

const TrigramStore::Counts& TrigramStore::counts(int order) const {
  switch (order) {
    case 1: return counts1_;
    case 2: return counts2_;
    case 3: return counts3_;
    default: throw std::invalid_argument("n-gram order must be 1..3");
  }
}

std::int64_t TrigramStore::count(std::span<const std::string> ngram) const {
  const auto& table = counts(static_cast<int>(ngram.size()));
  const auto it = table.find(key(ngram));
  return it == table.end() ? 0 : it->second;
}

std::int64_t TrigramStore::count(std::initializer_list<std::string> ngram) const {
  return count(std::span<const std::string>(ngram.begin(), ngram.size()));
}

void TrigramStore::save(std::ostream& out) const {
  for (int order = 1; order <= 3; ++order) {
    out << '#' << order << '\n';
    std::vector<std::pair<std::string, std::int64_t>> rows(counts(order).begin(),
                                                           counts(order).end());
    std::sort(rows.begin(), rows.end());
    for (const auto& [k, c] : rows) out << k << kSep << c << '\n';
  }
}

TrigramStore TrigramStore::load(std::istream& in, const std::string& source) {
  TrigramStore store;
  int order = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line == "#1" || line == "#2" || line == "#3") {
      order = line[1] - '0';
      continue;
    }
    if (order == 0) throw FormatError(source, line_no, "row before any section marker");
    auto cols = unicode::split(line, "\t");
    if (cols.size() != static_cast<std::size_t>(order) + 1) {
      throw FormatError(source, line_no, "expected " + std::to_string(order) +
                                             " tokens and a count");
    }
    std::int64_t c = 0;
    const auto& cs = cols.back();
    const auto [ptr, ec] = std::from_chars(cs.data(), cs.data() + cs.size(), c);
    if (ec != std::errc() || ptr != cs.data() + cs.size() || c < 1) {
      throw FormatError(source, line_no, "bad count '" + cs + "'");
    }
    cols.pop_back();
    auto& table = order == 1 ? store.counts1_ : order == 2 ? store.counts2_ : store.counts3_;
    table[key(cols)] += c;
    if (order == 1) store.total_tokens_ += c;
  }
  return store;
}

TrigramStore build_trigram_store(std::istream& in) {
  TrigramStore store;
  std::string line;
  while (std::getline(in, line)) store.ingest(tokenize_text(line));
  return store;
}

TrigramStore build_trigram_store_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError(path, "cannot open trigram corpus");
  auto store = build_trigram_store(in);
  store.freeze();
  return store;
}

}  // namespace formality
