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

#include "formality/lexicon.hpp"

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

bool ranks_before(const FormalCount& a, const FormalCount& b) {
  if (a.count != b.count) return a.count > b.count;
  return a.formal < b.formal;
}

std::string join_range(const TokenSeq& seq, const TokenRange& r) {
  std::vector<std::string> parts(seq.tokens().begin() + static_cast<std::ptrdiff_t>(r.begin),
                                 seq.tokens().begin() + static_cast<std::ptrdiff_t>(r.end));
  return unicode::join(parts, " ");
}

bool is_single_token(const std::string& s) { return s.find(' ') == std::string::npos; }

}  // namespace

void AlignmentLexicon::add(const std::string& informal, const std::string& formal,
                           std::int64_t count) {
  if (count < 1) throw std::invalid_argument("lexicon counts must be >= 1");
  auto& list = entries_[informal];
  auto it = std::find_if(list.begin(), list.end(),
                         [&](const FormalCount& fc) { return fc.formal == formal; });
  if (it == list.end()) {
    list.push_back({formal, count});
  } else {
    it->count += count;
  }
  std::sort(list.begin(), list.end(), ranks_before);
}

const std::vector<FormalCount>* AlignmentLexicon::find(const std::string& informal) const {
  const auto it = entries_.find(informal);
  return it == entries_.end() ? nullptr : &it->second;
}

void AlignmentLexicon::save(std::ostream& out) const {
  for (const auto& [informal, list] : entries_) {
    for (const auto& fc : list) out << informal << '\t' << fc.formal << '\t' << fc.count << '\n';
  }
}

AlignmentLexicon AlignmentLexicon::load(std::istream& in, const std::string& source) {
  AlignmentLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto cols = unicode::split(line, "\t");
    if (cols.size() != 3) throw FormatError(source, line_no, "expected 3 columns");
    std::int64_t c = 0;
    const auto [ptr, ec] = std::from_chars(cols[2].data(), cols[2].data() + cols[2].size(), c);
    if (ec != std::errc() || ptr != cols[2].data() + cols[2].size() || c < 1) {
      throw FormatError(source, line_no, "bad count '" + cols[2] + "'");
    }
    const auto informal = normalize(cols[0]);
    const auto formal = normalize(cols[1]);
    if (informal.empty() || formal.empty()) throw FormatError(source, line_no, "empty word");
    lex.add(informal, formal, c);
  }
  return lex;
}

AlignmentLexicon AlignmentLexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError(path, "cannot open lexicon");
  return load(in, path);
}

AlignmentLexicon build_lexicon(const Corpus& corpus) {
  AlignmentLexicon lex;
  bool any_aligned = false;
  for (const auto& e : corpus.entries) {
    for (const auto& a : e.alignments) {
      any_aligned = true;
      lex.add(join_range(e.informal, a.informal), join_range(e.formal, a.formal));
    }
  }
  if (!any_aligned) {
    throw std::invalid_argument("corpus '" + corpus.name + "' has no word alignments");
  }
  return lex;
}

std::optional<std::string> most_frequent_equivalent(const AlignmentLexicon& lexicon,
                                                    const std::string& word) {
  const auto* list = lexicon.find(word);
  if (!list || list->empty()) return std::nullopt;
  return list->front().formal;
}

TokenSeq dictionary_convert(const TokenSeq& sentence, const AlignmentLexicon& lexicon) {
  std::vector<std::string> out;
  out.reserve(sentence.size());
  for (const auto& tok : sentence) {
    const auto eq = most_frequent_equivalent(lexicon, tok);
    if (!eq) {
      out.push_back(tok);
      continue;
    }
    const TokenSeq pieces = tokenize(*eq);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return TokenSeq(std::move(out));
}

RswVocabulary rsw_vocabulary(const AlignmentLexicon& lexicon) {
  RswVocabulary vocab;
  for (const auto& [informal, list] : lexicon.entries()) {
    if (!is_single_token(informal)) continue;
    for (const auto& fc : list) {
      if (fc.formal != informal && is_single_token(fc.formal)) vocab[fc.formal].insert(informal);
    }
  }
  return vocab;
}

}  // namespace formality
