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

// Brute-force reference implementations used as test oracles. They follow
// the textbook definitions directly and trade all efficiency for obviousness.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Words = std::vector<std::string>;

inline std::vector<Words> ngrams(const Words& s, std::size_t n) {
  std::vector<Words> out;
  for (std::size_t i = 0; i + n <= s.size(); ++i) out.emplace_back(s.begin() + i, s.begin() + i + n);
  return out;
}

inline long occurrences(const std::vector<Words>& grams, const Words& g) {
  return std::count(grams.begin(), grams.end(), g);
}

inline long clipped_matches(const Words& hyp, const Words& ref, std::size_t n) {
  const auto h = ngrams(hyp, n);
  const auto r = ngrams(ref, n);
  std::vector<Words> seen;
  long total = 0;
  for (const auto& g : h) {
    if (std::find(seen.begin(), seen.end(), g) != seen.end()) continue;
    seen.push_back(g);
    total += std::min(occurrences(h, g), occurrences(r, g));
  }
  return total;
}

// Corpus BLEU, n <= 4, no smoothing; orders without hypothesis n-grams are
// dropped from the geometric mean.
inline double bleu(const std::vector<std::pair<Words, Words>>& corpus) {
  long matches[4] = {0, 0, 0, 0}, totals[4] = {0, 0, 0, 0};
  double c = 0.0, r = 0.0;
  for (const auto& [hyp, ref] : corpus) {
    c += static_cast<double>(hyp.size());
    r += static_cast<double>(ref.size());
    for (std::size_t n = 1; n <= 4; ++n) {
      matches[n - 1] += clipped_matches(hyp, ref, n);
      totals[n - 1] += static_cast<long>(ngrams(hyp, n).size());
    }
  }
  if (c == 0.0) return r == 0.0 ? 100.0 : 0.0;
  double product = 1.0;
  int orders = 0;
  for (int n = 0; n < 4; ++n) {
    if (totals[n] == 0) continue;
    product *= static_cast<double>(matches[n]) / static_cast<double>(totals[n]);
    ++orders;
  }
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return 100.0 * bp * std::pow(product, 1.0 / orders);
}

inline bool is_subsequence(const Words& sub, const Words& s) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < s.size() && j < sub.size(); ++i) {
    if (s[i] == sub[j]) ++j;
  }
  return j == sub.size();
}

// Tries every subsequence of `a` (2^|a| of them).
inline std::size_t lcs(const Words& a, const Words& b) {
  std::size_t best = 0;
  for (unsigned mask = 0; mask < (1u << a.size()); ++mask) {
    Words sub;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (mask & (1u << i)) sub.push_back(a[i]);
    }
    if (sub.size() > best && is_subsequence(sub, b)) best = sub.size();
  }
  return best;
}

inline double f1(double overlap, std::size_t hyp, std::size_t ref) {
  if (hyp == 0 && ref == 0) return 100.0;
  if (hyp == 0 || ref == 0 || overlap == 0.0) return 0.0;
  const double p = overlap / static_cast<double>(hyp);
  const double r = overlap / static_cast<double>(ref);
  return 100.0 * 2.0 * p * r / (p + r);
}

inline double rouge_l(const Words& hyp, const Words& ref) {
  return f1(static_cast<double>(lcs(hyp, ref)), hyp.size(), ref.size());
}

// Minimum over every alignment path, without memoization.
inline std::size_t edit_distance(const Words& a, const Words& b, std::size_t i = 0,
                                 std::size_t j = 0) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  const std::size_t sub = edit_distance(a, b, i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
  const std::size_t del = edit_distance(a, b, i + 1, j) + 1;
  const std::size_t ins = edit_distance(a, b, i, j + 1) + 1;
  return std::min({sub, del, ins});
}

inline double harmonic_mean(double a, double b) {
  return a + b == 0.0 ? 0.0 : 2.0 * a * b / (a + b);
}

// All sequences of length 0..max_len over `alphabet`.
inline std::vector<Words> all_sequences(const Words& alphabet, std::size_t max_len) {
  std::vector<Words> out{{}};
  std::vector<Words> frontier{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Words> next;
    for (const auto& s : frontier) {
      for (const auto& sym : alphabet) {
        Words t = s;
        t.push_back(sym);
        next.push_back(std::move(t));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace oracle
