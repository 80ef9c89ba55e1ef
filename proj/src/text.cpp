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

#include "formality/text.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "formality/errors.hpp"
#include "formality/random.hpp"
#include "formality/unicode.hpp"

namespace formality {

namespace {

constexpr UChar32 kZwnjCp = 0x200C;

bool is_presentation_form(UChar32 c) {
  return (c >= 0xFB50 && c <= 0xFDFF) || (c >= 0xFE70 && c <= 0xFEFF);
}

UChar32 fold_letter(UChar32 c) {
  switch (c) {
    case 0x064A:  // ARABIC LETTER YEH
    case 0x0649:  // ARABIC LETTER ALEF MAKSURA
      return 0x06CC;
    case 0x0643:  // ARABIC LETTER KAF
      return 0x06A9;
    default:
      return c;
  }
}

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  return *n;
}

const icu::Normalizer2& nfkc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFKC normalizer unavailable");
  return *n;
}

// Appends one cleaned token: ZWNJ runs collapsed, edges stripped.
void flush_token(icu::UnicodeString& token, icu::UnicodeString& out) {
  icu::UnicodeString cleaned;
  bool pending_zwnj = false;
  for (int32_t i = 0; i < token.length();) {
    const UChar32 c = token.char32At(i);
    i += U16_LENGTH(c);
    if (c == kZwnjCp) {
      pending_zwnj = !cleaned.isEmpty();
      continue;
    }
    if (pending_zwnj) cleaned.append(kZwnjCp);
    pending_zwnj = false;
    cleaned.append(c);
  }
  token.remove();
  if (cleaned.isEmpty()) return;
  if (!out.isEmpty()) out.append(static_cast<UChar>(0x20));
  out.append(cleaned);
}

}  // namespace

std::string normalize(std::string_view text) {
  const icu::UnicodeString input = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));

  icu::UnicodeString unfolded;
  for (int32_t i = 0; i < input.length();) {
    const UChar32 c = input.char32At(i);
    i += U16_LENGTH(c);
    if (is_presentation_form(c)) {
      UErrorCode status = U_ZERO_ERROR;
      unfolded.append(nfkc().normalize(icu::UnicodeString(c), status));
    } else {
      unfolded.append(c);
    }
  }

  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString composed = nfc().normalize(unfolded, status);
  if (U_FAILURE(status)) return std::string(text);

  icu::UnicodeString out;
  icu::UnicodeString token;
  for (int32_t i = 0; i < composed.length();) {
    const UChar32 c = composed.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      flush_token(token, out);
    } else {
      token.append(fold_letter(c));
    }
  }
  flush_token(token, out);

  std::string result;
  out.toUTF8String(result);
  return result;
}

TokenSeq::TokenSeq(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (const auto& t : tokens_) {
    if (t.empty()) throw FormatError("empty token");
    if (t.find_first_of(" \t\n\r") != std::string::npos) {
      throw FormatError("token contains whitespace: '" + t + "'");
    }
    if (unicode::starts_with(t, unicode::kZwnj) || unicode::ends_with(t, unicode::kZwnj)) {
      throw FormatError("token has ZWNJ at a boundary: '" + t + "'");
    }
  }
}

std::string TokenSeq::raw() const { return unicode::join(tokens_, " "); }

TokenSeq tokenize(std::string_view normalized) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < normalized.size()) {
    std::size_t next = normalized.find(' ', pos);
    if (next == std::string_view::npos) next = normalized.size();
    if (next > pos) tokens.emplace_back(normalized.substr(pos, next - pos));
    pos = next + 1;
  }
  return TokenSeq(std::move(tokens));
}

TokenSeq tokenize_text(std::string_view text) { return tokenize(normalize(text)); }

std::string validate_alignments(const AlignedPair& pair) {
  auto check_side = [](std::vector<TokenRange> ranges, std::size_t limit,
                       const char* side) -> std::string {
    for (const auto& r : ranges) {
      if (r.begin >= r.end) {
        return std::string(side) + " range " + std::to_string(r.begin) + "-" +
               std::to_string(r.end) + " is empty";
      }
      if (r.end > limit) {
        return std::string(side) + " range " + std::to_string(r.begin) + "-" +
               std::to_string(r.end) + " out of bounds (" + std::to_string(limit) +
               " tokens)";
      }
    }
    std::sort(ranges.begin(), ranges.end(),
              [](const TokenRange& a, const TokenRange& b) { return a.begin < b.begin; });
    for (std::size_t i = 1; i < ranges.size(); ++i) {
      if (ranges[i].begin < ranges[i - 1].end) {
        return std::string(side) + " ranges overlap at token " + std::to_string(ranges[i].begin);
      }
    }
    return {};
  };

  std::vector<TokenRange> inf, form;
  for (const auto& a : pair.alignments) {
    inf.push_back(a.informal);
    form.push_back(a.formal);
  }
  if (auto err = check_side(inf, pair.informal.size(), "informal"); !err.empty()) return err;
  return check_side(form, pair.formal.size(), "formal");
}

namespace {

std::size_t parse_index(std::string_view s) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw FormatError("bad token index '" + std::string(s) + "'");
  }
  return value;
}

TokenRange parse_range(std::string_view s) {
  const auto dash = s.find('-');
  if (dash == std::string_view::npos) {
    throw FormatError("range '" + std::string(s) + "' lacks '-'");
  }
  return {parse_index(s.substr(0, dash)), parse_index(s.substr(dash + 1))};
}

}  // namespace

std::vector<Alignment> parse_alignments(std::string_view field) {
  std::vector<Alignment> out;
  if (field.empty()) return out;
  for (const auto& item : unicode::split(field, ";")) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw FormatError("alignment '" + item + "' lacks ':'");
    }
    out.push_back({parse_range(std::string_view(item).substr(0, colon)),
                   parse_range(std::string_view(item).substr(colon + 1))});
  }
  return out;
}

std::string format_alignments(const std::vector<Alignment>& alignments) {
  std::string out;
  for (std::size_t i = 0; i < alignments.size(); ++i) {
    const auto& a = alignments[i];
    if (i) out += ';';
    out += std::to_string(a.informal.begin) + "-" + std::to_string(a.informal.end) + ":" +
           std::to_string(a.formal.begin) + "-" + std::to_string(a.formal.end);
  }
  return out;
}

Corpus parse_parsmap(std::istream& in, const std::string& name) {
  Corpus corpus;
  corpus.name = name;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line.rfind("informal\tformal", 0) == 0) continue;

    const auto cols = unicode::split(line, "\t");
    if (cols.size() < 3 || cols.size() > 4) {
      throw FormatError(name, line_no,
                        "expected 3 or 4 tab-separated columns, got " +
                            std::to_string(cols.size()));
    }
    AlignedPair pair;
    try {
      pair.informal = tokenize_text(cols[0]);
      pair.formal = tokenize_text(cols[1]);
      pair.source = cols[2];
      if (cols.size() == 4) pair.alignments = parse_alignments(cols[3]);
    } catch (const FormatError& e) {
      throw FormatError(name, line_no, e.reason());
    }
    if (auto err = validate_alignments(pair); !err.empty()) {
      throw FormatError(name, line_no, err);
    }
    corpus.entries.push_back(std::move(pair));
  }
  return corpus;
}

Corpus ingest_parsmap(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError(path, "cannot open corpus file");
  return parse_parsmap(in, path);
}

void write_parsmap(const Corpus& corpus, std::ostream& out) {
  out << "# informal\tformal\tsource\talignments\n";
  for (const auto& e : corpus.entries) {
    out << e.informal.raw() << '\t' << e.formal.raw() << '\t' << e.source << '\t'
        << format_alignments(e.alignments) << '\n';
  }
}

void write_parsmap_file(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ResourceError(path, "cannot open for writing");
  write_parsmap(corpus, out);
}

std::pair<Corpus, Corpus> split_train_test(const Corpus& corpus, std::uint64_t seed) {
  if (corpus.empty()) throw std::invalid_argument("cannot split an empty corpus");
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  const std::size_t n_train = (4 * corpus.size() + 4) / 5;
  Corpus train{corpus.name + ".train", {}};
  Corpus test{corpus.name + ".test", {}};
  train.entries.reserve(n_train);
  test.entries.reserve(corpus.size() - n_train);
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < n_train ? train : test).entries.push_back(corpus.entries[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

std::pair<Corpus, Corpus> split_by_length(const Corpus& test, std::size_t threshold) {
  if (threshold < 1) throw std::invalid_argument("length threshold must be >= 1");
  Corpus short_set{test.name + ".short", {}};
  Corpus long_set{test.name + ".long", {}};
  for (const auto& e : test.entries) {
    (e.informal.size() <= threshold ? short_set : long_set).entries.push_back(e);
  }
  return {std::move(short_set), std::move(long_set)};
}

}  // namespace formality
