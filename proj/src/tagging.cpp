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

#include "formality/tagging.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "formality/errors.hpp"
#include "formality/unicode.hpp"

namespace formality {

namespace {

bool all_digits(const std::string& w) {
  // ASCII, Extended Arabic-Indic (U+06F0..) and Arabic-Indic (U+0660..) digits.
  std::size_t i = 0;
  while (i < w.size()) {
    const auto c = static_cast<unsigned char>(w[i]);
    if (c >= '0' && c <= '9') {
      ++i;
      continue;
    }
    if (i + 1 < w.size() && (c == 0xDB || c == 0xD9)) {
      const auto d = static_cast<unsigned char>(w[i + 1]);
      if ((c == 0xDB && d >= 0xB0 && d <= 0xB9) || (c == 0xD9 && d >= 0xA0 && d <= 0xA9)) {
        i += 2;
        continue;
      }
    }
    return false;
  }
  return !w.empty();
}

bool is_punctuation(const std::string& w) {
  static const char* const kPunct[] = {".", ",", "!", "?", ":", ";", "،", "؛", "؟", "«", "»",
                                       "(", ")", "-", "\"", "'"};
  for (const char* p : kPunct) {
    if (w == p) return true;
  }
  return false;
}

}  // namespace

std::string LexiconTagger::tag_word(const std::string& word) const {
  if (const auto it = lexicon_.find(word); it != lexicon_.end()) return it->second;
  if (all_digits(word)) return "NUM";
  if (is_punctuation(word)) return "PUNC";
  const std::string zwnj(unicode::kZwnj);
  if (unicode::starts_with(word, "می" + zwnj) || unicode::starts_with(word, "نمی" + zwnj)) {
    return "V";
  }
  if (unicode::ends_with(word, zwnj + "ها") || unicode::ends_with(word, "های")) return "N";
  if (unicode::ends_with(word, "ترین") || unicode::ends_with(word, "تر")) return "ADJ";
  return kUnknownTag;
}

TagSeq LexiconTagger::tag(const TokenSeq& sentence) const {
  TagSeq out;
  out.tags.reserve(sentence.size());
  for (const auto& w : sentence) out.tags.push_back(tag_word(w));
  return out;
}

LexiconTagger LexiconTagger::load(std::istream& in, const std::string& source) {
  std::map<std::string, std::string> lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto cols = unicode::split(line, "\t");
    if (cols.size() != 2 || cols[1].empty()) {
      throw FormatError(source, line_no, "expected word<TAB>TAG");
    }
    lex.emplace(normalize(cols[0]), cols[1]);
  }
  return LexiconTagger(std::move(lex));
}

LexiconTagger LexiconTagger::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError(path, "cannot open tag lexicon");
  return load(in, path);
}

std::vector<TaggedSentence> parse_sidecar(std::istream& in, const std::string& source) {
  std::vector<TaggedSentence> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> tokens;
    TagSeq tags;
    const TokenSeq items = tokenize(normalize(line));
    for (const auto& item : items) {
      const auto slash = item.rfind('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 == item.size()) {
        throw FormatError(source, line_no, "item '" + item + "' is not token/TAG");
      }
      tokens.push_back(item.substr(0, slash));
      tags.tags.push_back(item.substr(slash + 1));
    }
    try {
      out.push_back({TokenSeq(std::move(tokens)), std::move(tags)});
    } catch (const FormatError& e) {
      throw FormatError(source, line_no, e.reason());
    }
  }
  return out;
}

std::vector<TaggedSentence> load_sidecar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError(path, "cannot open tag sidecar");
  return parse_sidecar(in, path);
}

void write_sidecar(const std::vector<TaggedSentence>& sentences, std::ostream& out) {
  for (const auto& s : sentences) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      if (i) out << ' ';
      out << s.tokens[i] << '/' << s.tags.tags[i];
    }
    out << '\n';
  }
}

SidecarTagger::SidecarTagger(std::vector<TaggedSentence> sentences)
    : sentences_(std::move(sentences)) {
  for (std::size_t i = 0; i < sentences_.size(); ++i) index_.emplace(sentences_[i].tokens.raw(), i);
}

TagSeq SidecarTagger::tag(const TokenSeq& sentence) const {
  const auto it = index_.find(sentence.raw());
  if (it == index_.end()) {
    throw FormatError("sentence not found in tag sidecar: '" + sentence.raw() + "'");
  }
  return sentences_[it->second].tags;
}

}  // namespace formality
