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

#include "formality/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "formality/unicode.hpp"

namespace formality {

namespace {

using NgramCounts = std::unordered_map<std::string, std::int64_t>;

NgramCounts ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t j = 1; j < n; ++j) {
      key += '\x1f';
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

double f1(double overlap, std::size_t hyp_len, std::size_t ref_len) {
  if (hyp_len == 0 && ref_len == 0) return 100.0;
  if (hyp_len == 0 || ref_len == 0 || overlap == 0.0) return 0.0;
  const double p = overlap / static_cast<double>(hyp_len);
  const double r = overlap / static_cast<double>(ref_len);
  return 100.0 * 2.0 * p * r / (p + r);
}

void check_lists(std::size_t hyps, std::size_t refs) {
  if (hyps == 0) throw std::invalid_argument("empty hypothesis list");
  if (hyps != refs) {
    throw std::invalid_argument("hypothesis/reference count mismatch: " + std::to_string(hyps) +
                                " vs " + std::to_string(refs));
  }
}

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& o) {
  for (int n = 0; n < kMaxOrder; ++n) {
    matches[n] += o.matches[n];
    totals[n] += o.totals[n];
  }
  hyp_length += o.hyp_length;
  ref_length += o.ref_length;
  return *this;
}

BleuStats bleu_stats(const TokenSeq& hypothesis, const TokenSeq& reference) {
  BleuStats s;
  s.hyp_length = static_cast<std::int64_t>(hypothesis.size());
  s.ref_length = static_cast<std::int64_t>(reference.size());
  for (int n = 1; n <= BleuStats::kMaxOrder; ++n) {
    const auto hyp = ngram_counts(hypothesis.tokens(), static_cast<std::size_t>(n));
    const auto ref = ngram_counts(reference.tokens(), static_cast<std::size_t>(n));
    for (const auto& [gram, c] : hyp) {
      s.totals[n - 1] += c;
      const auto it = ref.find(gram);
      if (it != ref.end()) s.matches[n - 1] += std::min(c, it->second);
    }
  }
  return s;
}

double bleu_from_stats(const BleuStats& s) {
  if (s.hyp_length == 0) return s.ref_length == 0 ? 100.0 : 0.0;
  double log_sum = 0.0;
  int orders = 0;
  for (int n = 0; n < BleuStats::kMaxOrder; ++n) {
    if (s.totals[n] == 0) continue;
    if (s.matches[n] == 0) return 0.0;
    log_sum += std::log(static_cast<double>(s.matches[n]) / static_cast<double>(s.totals[n]));
    ++orders;
  }
  const double bp = s.hyp_length < s.ref_length
                        ? std::exp(1.0 - static_cast<double>(s.ref_length) /
                                             static_cast<double>(s.hyp_length))
                        : 1.0;
  return 100.0 * bp * std::exp(log_sum / orders);
}

double bleu(std::span<const TokenSeq> hypotheses, std::span<const TokenSeq> references) {
  check_lists(hypotheses.size(), references.size());
  BleuStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    total += bleu_stats(hypotheses[i], references[i]);
  }
  return bleu_from_stats(total);
}

double sentence_bleu(const TokenSeq& hypothesis, const TokenSeq& reference) {
  const BleuStats s = bleu_stats(hypothesis, reference);
  if (s.hyp_length == 0) return s.ref_length == 0 ? 100.0 : 0.0;
  if (s.matches[0] == 0) return 0.0;
  double log_sum = 0.0;
  int orders = 0;
  for (int n = 0; n < BleuStats::kMaxOrder; ++n) {
    if (s.totals[n] == 0) continue;
    double m = static_cast<double>(s.matches[n]);
    double t = static_cast<double>(s.totals[n]);
    if (n > 0 && m == 0.0) {
      m += 1.0;
      t += 1.0;
    }
    log_sum += std::log(m / t);
    ++orders;
  }
  const double bp = s.hyp_length < s.ref_length
                        ? std::exp(1.0 - static_cast<double>(s.ref_length) /
                                             static_cast<double>(s.hyp_length))
                        : 1.0;
  return 100.0 * bp * std::exp(log_sum / orders);
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l(const TokenSeq& hypothesis, const TokenSeq& reference) {
  const auto lcs = lcs_length(hypothesis.tokens(), reference.tokens());
  return f1(static_cast<double>(lcs), hypothesis.size(), reference.size());
}

double rouge_1(const TokenSeq& hypothesis, const TokenSeq& reference) {
  const auto hyp = ngram_counts(hypothesis.tokens(), 1);
  const auto ref = ngram_counts(reference.tokens(), 1);
  std::int64_t overlap = 0;
  for (const auto& [w, c] : hyp) {
    const auto it = ref.find(w);
    if (it != ref.end()) overlap += std::min(c, it->second);
  }
  return f1(static_cast<double>(overlap), hypothesis.size(), reference.size());
}

double rouge_l_corpus(std::span<const TokenSeq> hypotheses, std::span<const TokenSeq> references) {
  check_lists(hypotheses.size(), references.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) sum += rouge_l(hypotheses[i], references[i]);
  return sum / static_cast<double>(hypotheses.size());
}

double rouge_1_corpus(std::span<const TokenSeq> hypotheses, std::span<const TokenSeq> references) {
  check_lists(hypotheses.size(), references.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) sum += rouge_1(hypotheses[i], references[i]);
  return sum / static_cast<double>(hypotheses.size());
}

std::vector<std::string> rsw_occurrences_from_alignments(const AlignedPair& pair) {
  std::vector<std::string> out;
  for (const auto& a : pair.alignments) {
    if (a.informal.size() != 1 || a.formal.size() != 1) continue;
    const auto& formal = pair.formal[a.formal.begin];
    if (pair.informal[a.informal.begin] != formal) out.push_back(formal);
  }
  return out;
}

std::vector<std::string> rsw_occurrences_from_vocabulary(const TokenSeq& reference,
                                                         const RswVocabulary& vocabulary) {
  std::vector<std::string> out;
  for (const auto& tok : reference) {
    if (vocabulary.count(tok)) out.push_back(tok);
  }
  return out;
}

RswCounts rsw_counts(const TokenSeq& generated, std::span<const std::string> rsw_occurrences) {
  std::unordered_map<std::string, std::int64_t> available;
  for (const auto& tok : generated) ++available[tok];
  RswCounts c;
  c.total = static_cast<std::int64_t>(rsw_occurrences.size());
  for (const auto& occ : rsw_occurrences) {
    auto it = available.find(occ);
    if (it != available.end() && it->second > 0) {
      --it->second;
      ++c.converted;
    }
  }
  return c;
}

std::optional<double> rsw_corpus_score(const RswCounts& totals) {
  if (totals.total == 0) return std::nullopt;
  return 100.0 * static_cast<double>(totals.converted) / static_cast<double>(totals.total);
}

std::optional<double> rsw_score(const TokenSeq& generated,
                                std::span<const std::string> rsw_occurrences) {
  return rsw_corpus_score(rsw_counts(generated, rsw_occurrences));
}

std::size_t edit_distance(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double tag_error(const TagSeq& generated, const TagSeq& reference) {
  const std::size_t longest = std::max(generated.size(), reference.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(edit_distance(generated.tags, reference.tags)) /
         static_cast<double>(longest);
}

double tag_matching_score(std::span<const TagPair> pairs) {
  if (pairs.empty()) throw std::invalid_argument("tag_matching_score needs at least one pair");
  double sum = 0.0;
  for (const auto& p : pairs) sum += tag_error(p.generated, p.reference);
  return 100.0 * (1.0 - sum / static_cast<double>(pairs.size()));
}

double fti(double rsw, double tms) {
  if (rsw + tms == 0.0) return 0.0;
  return 2.0 * rsw * tms / (rsw + tms);
}

std::size_t zwnj_diagnostic(const TokenSeq& generated, const TokenSeq& reference) {
  std::vector<bool> used(generated.size(), false);
  std::size_t mismatches = 0;
  for (const auto& ref_tok : reference) {
    if (ref_tok.find(unicode::kZwnj) == std::string::npos) continue;
    std::vector<std::string> pieces;
    for (auto& p : unicode::split(ref_tok, unicode::kZwnj)) {
      if (!p.empty()) pieces.push_back(std::move(p));
    }
    if (pieces.size() < 2 || pieces.size() > generated.size()) continue;
    for (std::size_t i = 0; i + pieces.size() <= generated.size(); ++i) {
      bool hit = true;
      for (std::size_t k = 0; k < pieces.size() && hit; ++k) {
        hit = !used[i + k] && generated[i + k] == pieces[k];
      }
      if (hit) {
        for (std::size_t k = 0; k < pieces.size(); ++k) used[i + k] = true;
        ++mismatches;
        break;
      }
    }
  }
  return mismatches;
}

}  // namespace formality
