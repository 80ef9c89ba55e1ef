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

#include <cmath>
#include <random>

#include <doctest.h>

#include "formality/metrics.hpp"
#include "oracles.hpp"

using namespace formality;
using doctest::Approx;

namespace {

TokenSeq T(const std::string& s) { return tokenize_text(s); }
TagSeq G(const std::vector<std::string>& tags) { return TagSeq{tags}; }

}  // namespace

TEST_CASE("BLEU identity and disjoint") {
  const std::vector<TokenSeq> h{T("a b c d e"), T("x y")};
  CHECK(bleu(h, h) == Approx(100.0));
  const std::vector<TokenSeq> d{T("p q r s t"), T("u v")};
  CHECK(bleu(d, h) == 0.0);
}

TEST_CASE("BLEU brevity penalty on a short hypothesis") {
  const std::vector<TokenSeq> h{T("a b c d")};
  const std::vector<TokenSeq> r{T("a b c d e")};
  CHECK(bleu(h, r) == Approx(100.0 * std::exp(1.0 - 5.0 / 4.0)).epsilon(1e-12));
  CHECK(bleu(h, r) == Approx(77.88).epsilon(1e-4));
}

TEST_CASE("BLEU rejects empty or mismatched lists") {
  const std::vector<TokenSeq> one{T("a")};
  const std::vector<TokenSeq> none;
  CHECK_THROWS_AS(bleu(none, none), std::invalid_argument);
  CHECK_THROWS_AS(bleu(one, none), std::invalid_argument);
}

TEST_CASE("BLEU is corpus-level, not a mean of sentences") {
  const std::vector<TokenSeq> h{T("a b c d"), T("x")};
  const std::vector<TokenSeq> r{T("a b c d"), T("y")};
  std::vector<std::pair<oracle::Words, oracle::Words>> corpus{
      {h[0].tokens(), r[0].tokens()}, {h[1].tokens(), r[1].tokens()}};
  CHECK(bleu(h, r) == Approx(oracle::bleu(corpus)).epsilon(1e-12));
  CHECK(bleu(h, r) > 0.0);
}

TEST_CASE("sentence BLEU smooths higher orders") {
  CHECK(sentence_bleu(T("a b c d"), T("a b c d")) == Approx(100.0));
  CHECK(sentence_bleu(T("a x b y"), T("a z b w")) > 0.0);
  CHECK(sentence_bleu(T("x"), T("y")) == 0.0);
}

TEST_CASE("ROUGE-L and ROUGE-1 examples") {
  CHECK(rouge_l(T("a c b d"), T("a b c d")) == Approx(75.0));
  CHECK(rouge_1(T("a b x y"), T("a b c d")) == Approx(50.0));
  CHECK(rouge_l(T("a b"), T("a b")) == Approx(100.0));
  CHECK(rouge_l(T("a b"), T("c d")) == 0.0);
  CHECK(rouge_1(T("a b"), T("c d")) == 0.0);
  CHECK(rouge_l(TokenSeq{}, TokenSeq{}) == 100.0);
  CHECK(rouge_l(TokenSeq{}, T("a")) == 0.0);
  CHECK(rouge_1(T("a a a"), T("a b c")) == Approx(100.0 / 3.0));
}

TEST_CASE("BLEU and ROUGE-L match oracles on random pairs") {
  std::mt19937 gen(5);
  const oracle::Words alphabet{"a", "b", "c", "d"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<oracle::Words, oracle::Words>> corpus;
    std::vector<TokenSeq> hyps, refs;
    const int sentences = 1 + static_cast<int>(gen() % 4);
    for (int s = 0; s < sentences; ++s) {
      oracle::Words h, r;
      for (unsigned i = gen() % 9; i > 0; --i) h.push_back(alphabet[gen() % 4]);
      for (unsigned i = gen() % 9; i > 0; --i) r.push_back(alphabet[gen() % 4]);
      corpus.emplace_back(h, r);
      hyps.emplace_back(h);
      refs.emplace_back(r);
      CHECK(rouge_l(hyps.back(), refs.back()) ==
            Approx(oracle::rouge_l(h, r)).epsilon(1e-12));
    }
    CHECK(bleu(hyps, refs) == Approx(oracle::bleu(corpus)).epsilon(1e-12));
  }
}

TEST_CASE("RSW multiset matching") {
  const std::vector<std::string> occ{"خانه", "در"};
  CHECK(rsw_score(T("به خانه رفتم"), occ) == Approx(50.0));
  CHECK(rsw_score(T("در خانه"), occ) == Approx(100.0));
  CHECK_FALSE(rsw_score(T("x"), std::vector<std::string>{}).has_value());
  // each occurrence is matched at most once
  const std::vector<std::string> twice{"را", "را"};
  CHECK(rsw_counts(T("را"), twice).converted == 1);
  CHECK(rsw_counts(T("را را را"), twice).converted == 2);
}

TEST_CASE("RSW ignores changes to non-RSW tokens") {
  const std::vector<std::string> occ{"را"};
  CHECK(rsw_score(T("کتاب را بده"), occ) == rsw_score(T("دفتر را بگیر"), occ));
}

TEST_CASE("RSW occurrences from alignments and vocabulary") {
  AlignedPair p;
  p.informal = T("کتابش رو بده");
  p.formal = T("کتابش را بده");
  p.alignments = {{{0, 1}, {0, 1}}, {{1, 2}, {1, 2}}, {{2, 3}, {2, 3}}};
  CHECK(rsw_occurrences_from_alignments(p) == std::vector<std::string>{"را"});
  RswVocabulary v{{"را", {"رو"}}, {"در", {"تو"}}};
  CHECK(rsw_occurrences_from_vocabulary(T("در خانه را در"), v) ==
        std::vector<std::string>{"در", "را", "در"});
}

TEST_CASE("RSW corpus score is a micro-average and absent when empty") {
  RswCounts c;
  c += {1, 2};
  c += {0, 0};
  c += {3, 3};
  CHECK(rsw_corpus_score(c) == Approx(80.0));
  CHECK_FALSE(rsw_corpus_score(RswCounts{}).has_value());
}

TEST_CASE("tag matching score") {
  const std::vector<TagPair> one{{G({"N", "V", "ADJ", "N"}), G({"N", "V", "N", "N"})}};
  CHECK(tag_matching_score(one) == Approx(75.0));
  const std::vector<TagPair> empty_gen{{G({}), G({"N", "V", "N"})}};
  CHECK(tag_matching_score(empty_gen) == 0.0);
  const std::vector<TagPair> both_empty{{G({}), G({})}};
  CHECK(tag_matching_score(both_empty) == 100.0);
  CHECK_THROWS_AS(tag_matching_score(std::vector<TagPair>{}), std::invalid_argument);
}

TEST_CASE("edit distance matches the exhaustive oracle and is symmetric") {
  std::mt19937 gen(9);
  const oracle::Words tags{"N", "V", "ADJ"};
  for (int i = 0; i < 300; ++i) {
    oracle::Words a, b;
    for (unsigned k = gen() % 7; k > 0; --k) a.push_back(tags[gen() % 3]);
    for (unsigned k = gen() % 7; k > 0; --k) b.push_back(tags[gen() % 3]);
    CHECK(edit_distance(a, b) == oracle::edit_distance(a, b));
    CHECK(tag_error(G(a), G(b)) == tag_error(G(b), G(a)));
  }
}

TEST_CASE("FTI is the harmonic mean") {
  CHECK(fti(61.82, 32.24) == Approx(42.38).epsilon(1e-4));
  CHECK(std::abs(fti(61.82, 32.24) - 42.38) <= 0.005);
  CHECK(std::abs(fti(66.74, 42.00) - 51.56) <= 0.005);
  CHECK(fti(50.0, 50.0) == Approx(50.0));
  CHECK(fti(0.0, 0.0) == 0.0);
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.01, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(gen), b = u(gen);
    CHECK(fti(a, b) == fti(b, a));
    CHECK(fti(a, b) >= std::min(a, b) - 1e-12);
    CHECK(fti(a, b) <= (a + b) / 2.0 + 1e-12);
    CHECK(fti(a, b) == Approx(oracle::harmonic_mean(a, b)).epsilon(1e-14));
  }
}

TEST_CASE("ZWNJ diagnostic counts space-split compounds") {
  const std::string z = "‌";
  CHECK(zwnj_diagnostic(T("این اطلاع رسانی است"), T("این اطلاع" + z + "رسانی است")) == 1);
  CHECK(zwnj_diagnostic(T("اطلاع" + z + "رسانی"), T("اطلاع" + z + "رسانی")) == 0);
  CHECK(zwnj_diagnostic(T("a b"), T("a b")) == 0);
  CHECK(zwnj_diagnostic(T("باغ ها و باغ ها"), T("باغ" + z + "ها و باغ" + z + "ها")) == 2);
  CHECK(zwnj_diagnostic(T("باغ ها"), T("باغ" + z + "ها و باغ" + z + "ها")) == 1);
}

TEST_CASE("identity hypothesis scores 100 everywhere") {
  const TokenSeq s = T("کتاب را به خانه‌ام بردم");
  const std::vector<TokenSeq> v{s};
  CHECK(bleu(v, v) == Approx(100.0));
  CHECK(rouge_l(s, s) == 100.0);
  CHECK(rouge_1(s, s) == 100.0);
  const std::vector<std::string> occ{"را"};
  CHECK(rsw_score(s, occ) == 100.0);
  CHECK(zwnj_diagnostic(s, s) == 0);
}
