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

#include "formality/rules.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "formality/errors.hpp"
#include "formality/unicode.hpp"

namespace formality {

std::string_view to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::kSuffixRewrite: return "suffix-rewrite";
    case RuleKind::kEncliticRewrite: return "enclitic-rewrite";
    case RuleKind::kWholeWord: return "whole-word";
  }
  return "?";
}

std::optional<RuleKind> parse_rule_kind(std::string_view s) {
  if (s == "suffix-rewrite") return RuleKind::kSuffixRewrite;
  if (s == "enclitic-rewrite") return RuleKind::kEncliticRewrite;
  if (s == "whole-word") return RuleKind::kWholeWord;
  return std::nullopt;
}

std::optional<std::string> ConversionRule::apply(const std::string& word) const {
  for (const auto& g : guards) {
    if (unicode::ends_with(word, g)) return std::nullopt;
  }
  std::string out;
  if (kind == RuleKind::kWholeWord) {
    if (word != pattern) return std::nullopt;
    out = replacement;
  } else {
    if (word.size() <= pattern.size() || !unicode::ends_with(word, pattern)) return std::nullopt;
    const auto stem = unicode::trim_zwnj(std::string_view(word).substr(0, word.size() - pattern.size()));
    if (unicode::length(stem) < kMinStemLength) return std::nullopt;
    for (char c : replacement) {
      if (c == '*') {
        out += stem;
      } else {
        out += c;
      }
    }
  }
  out = normalize(out);
  if (out.empty()) return std::nullopt;
  return out;
}

void CandidateSet::add(const std::string& candidate) {
  if (std::find(candidates_.begin(), candidates_.end(), candidate) == candidates_.end()) {
    candidates_.push_back(candidate);
  }
}

RuleSet RuleSet::load(std::istream& in, const std::string& source) {
  std::vector<ConversionRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto cols = unicode::split(line, "\t");
    if (cols.size() < 4 || cols.size() > 5) {
      throw FormatError(source, line_no, "expected 5 tab-separated columns");
    }
    ConversionRule rule;
    rule.id = cols[0];
    const auto kind = parse_rule_kind(cols[1]);
    if (!kind) throw FormatError(source, line_no, "unknown rule kind '" + cols[1] + "'");
    rule.kind = *kind;

    const auto match = unicode::split(normalize(cols[2]), " ");
    if (match.empty() || match[0].empty()) throw FormatError(source, line_no, "empty match");
    const bool wildcard = match[0][0] == '*';
    if (rule.kind == RuleKind::kWholeWord) {
      if (wildcard) throw FormatError(source, line_no, "whole-word rule with stem wildcard");
      rule.pattern = match[0];
    } else {
      if (!wildcard || match[0].size() == 1) {
        throw FormatError(source, line_no, "suffix rule needs '*<suffix>'");
      }
      rule.pattern = match[0].substr(1);
    }
    for (std::size_t i = 1; i < match.size(); ++i) {
      if (match[i].size() < 2 || match[i][0] != '!') {
        throw FormatError(source, line_no, "bad guard '" + match[i] + "'");
      }
      rule.guards.push_back(match[i].substr(1));
    }

    rule.replacement = cols[3];
    if (normalize(rule.replacement).empty()) {
      throw FormatError(source, line_no, "empty replacement");
    }
    if (rule.kind == RuleKind::kWholeWord && rule.replacement.find('*') != std::string::npos) {
      throw FormatError(source, line_no, "whole-word replacement cannot use '*'");
    }
    if (cols.size() == 5) rule.description = cols[4];
    rules.push_back(std::move(rule));
  }
  return RuleSet(std::move(rules));
}

RuleSet RuleSet::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError(path, "cannot open rules file");
  return load(in, path);
}

CandidateSet apply_rules(const std::string& word, const RuleSet& rules) {
  CandidateSet set(word);
  for (const auto& rule : rules.rules()) {
    if (auto c = rule.apply(word)) set.add(*c);
  }
  return set;
}

namespace {

std::string first_token(const std::string& candidate) {
  return candidate.substr(0, candidate.find(' '));
}

// Index of the strictly highest score; -1 when every score is zero.
long argmax_nonzero(const std::vector<std::int64_t>& scores) {
  long best = -1;
  std::int64_t best_score = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > best_score) {
      best_score = scores[i];
      best = static_cast<long>(i);
    }
  }
  return best;
}

// Candidates for a fragment without further splitting.
std::vector<std::string> resolve_fragment(const std::string& fragment, const RuleSet& rules,
                                          const AlignmentLexicon* lexicon) {
  auto set = apply_rules(fragment, rules);
  if (!set.empty()) return set.candidates();
  if (lexicon) {
    if (auto eq = most_frequent_equivalent(*lexicon, fragment)) return {*eq};
  }
  return {};
}

// Fragments shorter than this are never accepted.
constexpr std::size_t kMinFragmentLength = 2;

}  // namespace

std::string best_equivalent(std::span<const std::string> candidates,
                            std::span<const std::string> left_context,
                            const TrigramStore* trigrams) {
  if (candidates.empty()) throw std::invalid_argument("best_equivalent needs candidates");
  if (candidates.size() == 1 || trigrams == nullptr) return candidates.front();

  for (std::size_t order = 3; order >= 1; --order) {
    const std::size_t ctx = order - 1;
    if (left_context.size() < ctx) continue;
    std::vector<std::int64_t> scores;
    scores.reserve(candidates.size());
    for (const auto& cand : candidates) {
      std::vector<std::string> gram(left_context.end() - static_cast<std::ptrdiff_t>(ctx),
                                    left_context.end());
      gram.push_back(first_token(cand));
      scores.push_back(trigrams->count(gram));
    }
    if (const long best = argmax_nonzero(scores); best >= 0) {
      return candidates[static_cast<std::size_t>(best)];
    }
  }
  return candidates.front();
}

CandidateSet split_and_retry(const std::string& word, const RuleSet& rules,
                             const AlignmentLexicon* lexicon, std::size_t max_fragments) {
  CandidateSet out(word);
  if (max_fragments < 2 || unicode::length(word) < 2) return out;

  for (const std::size_t cut : unicode::interior_boundaries(word)) {
    const auto left = unicode::trim_zwnj(std::string_view(word).substr(0, cut));
    const auto right = unicode::trim_zwnj(std::string_view(word).substr(cut));
    if (unicode::length(left) < kMinFragmentLength || unicode::length(right) < kMinFragmentLength) {
      continue;
    }
    const auto left_conv = resolve_fragment(left, rules, lexicon);
    if (left_conv.empty()) continue;
    auto right_conv = resolve_fragment(right, rules, lexicon);
    if (right_conv.empty() && max_fragments > 2) {
      right_conv = split_and_retry(right, rules, lexicon, max_fragments - 1).candidates();
    }
    for (const auto& l : left_conv) {
      for (const auto& r : right_conv) out.add(l + " " + r);
    }
  }
  return out;
}

std::vector<std::string> dispatch(const std::string& word, const CandidateSet& candidates,
                                  std::span<const std::string> left_context,
                                  const RuleSet& rules, const TrigramStore* trigrams,
                                  const AlignmentLexicon* lexicon) {
  std::string chosen;
  if (candidates.size() == 1) {
    chosen = candidates.candidates().front();
  } else if (candidates.size() > 1) {
    chosen = best_equivalent(candidates.candidates(), left_context, trigrams);
  } else if (auto eq = lexicon ? most_frequent_equivalent(*lexicon, word) : std::nullopt) {
    chosen = *eq;
  } else {
    const auto retry = split_and_retry(word, rules, lexicon);
    chosen = retry.empty() ? word : best_equivalent(retry.candidates(), left_context, trigrams);
  }
  auto tokens = tokenize(chosen).tokens();
  if (tokens.empty()) return {word};
  return tokens;
}

TokenSeq convert_sentence(const TokenSeq& sentence, const RuleSet& rules,
                          const TrigramStore* trigrams, const AlignmentLexicon* lexicon) {
  std::vector<std::string> out;
  out.reserve(sentence.size());
  for (const auto& word : sentence) {
    const std::size_t ctx = std::min<std::size_t>(2, out.size());
    const std::span<const std::string> left(out.data() + out.size() - ctx, ctx);
    auto tokens = dispatch(word, apply_rules(word, rules), left, rules, trigrams, lexicon);
    for (auto& t : tokens) out.push_back(std::move(t));
  }
  return TokenSeq(std::move(out));
}

}  // namespace formality
