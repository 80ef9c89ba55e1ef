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

#include "formality/toy_task.hpp"

#include <stdexcept>

#include "formality/errors.hpp"
#include "formality/metrics.hpp"
#include "formality/random.hpp"

namespace formality {

namespace {

std::vector<Token> substitute(const std::vector<Token>& input, const std::vector<Token>& map) {
  std::vector<Token> out;
  out.reserve(input.size());
  for (Token t : input) out.push_back(map[t]);
  return out;
}

TokenSeq as_tokens(const std::vector<Token>& ids) {
  std::vector<std::string> words;
  words.reserve(ids.size());
  for (Token t : ids) words.push_back("s" + std::to_string(t));
  return TokenSeq(std::move(words));
}

// Separate stream for the perturbations, independent of data generation.
constexpr std::uint64_t kPerturbStream = 0x9E3779B97F4A7C15ULL;

}  // namespace

ToyTask make_toy_task(std::uint64_t seed, const ToyTaskOptions& o) {
  if (o.symbols < 2 || o.min_length < 2 || o.max_length < o.min_length) {
    throw std::invalid_argument("invalid toy task options");
  }
  Rng rng(seed);
  ToyTask task;
  task.vocab = o.symbols + 1;
  std::vector<Token> image;
  for (Token s = 1; s <= o.symbols; ++s) image.push_back(s);
  rng.shuffle(image);
  task.substitution.push_back(TinySeq2Seq::kBos);
  task.substitution.insert(task.substitution.end(), image.begin(), image.end());

  auto sample = [&] {
    const std::size_t len = o.min_length + rng.below(o.max_length - o.min_length + 1);
    std::vector<Token> seq(len);
    for (auto& t : seq) t = static_cast<Token>(1 + rng.below(o.symbols));
    return seq;
  };
  for (std::size_t i = 0; i < o.train_size; ++i) {
    auto input = sample();
    auto target = substitute(input, task.substitution);
    task.train.push_back({std::move(input), std::move(target)});
  }
  for (std::size_t i = 0; i < o.eval_size; ++i) {
    const auto source = sample();
    auto target = substitute(source, task.substitution);
    task.eval.push_back({perturb_swap(source, rng), std::move(target)});
  }
  return task;
}

ToyEvaluation evaluate(const TinySeq2Seq& model, const std::vector<Example>& eval) {
  if (eval.empty()) throw std::invalid_argument("empty evaluation set");
  ToyEvaluation r;
  std::size_t exact = 0, correct = 0, total = 0;
  std::vector<TokenSeq> hyps, refs;
  for (const auto& ex : eval) {
    const auto out = model.greedy_decode(ex.input, ex.target.size());
    bool all = true;
    for (std::size_t t = 0; t < out.size(); ++t) {
      if (out[t] == ex.target[t]) {
        ++correct;
      } else {
        all = false;
      }
    }
    total += out.size();
    if (all) ++exact;
    hyps.push_back(as_tokens(out));
    refs.push_back(as_tokens(ex.target));
  }
  r.exact_match = 100.0 * static_cast<double>(exact) / static_cast<double>(eval.size());
  r.token_accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(total);
  r.bleu = bleu(hyps, refs);
  r.rouge_l = rouge_l_corpus(hyps, refs);
  return r;
}

TrainingRun train_on_task(const ToyTask& task, const TrainConfig& config) {
  if (task.train.empty()) throw std::invalid_argument("empty training set");
  if (config.steps < 0) throw std::invalid_argument("step count must be >= 0");
  if (config.vocab != task.vocab) throw std::invalid_argument("config vocab does not match task");

  TrainingRun run;
  run.name = config.consistency ? "consistency" : "supervised";
  run.model = TinySeq2Seq::random(config.vocab, config.width, config.seed);
  Rng rng(config.seed ^ kPerturbStream);

  {
    // Initial losses: same computation as step 1, without the update.
    TinySeq2Seq probe = run.model;
    Rng probe_rng = rng;
    TrainConfig frozen = config;
    frozen.learning_rate = 0.0;
    run.log.push_back(train_step(probe, task.train.front(), frozen, probe_rng));
  }
  for (long step = 1; step <= config.steps; ++step) {
    const auto& ex = task.train[static_cast<std::size_t>(step - 1) % task.train.size()];
    try {
      run.log.push_back(train_step(run.model, ex, config, rng));
    } catch (const DivergenceError& e) {
      throw DivergenceError(step, "training diverged");
    }
  }
  run.evaluation = evaluate(run.model, task.eval);
  return run;
}

TrainDemoResult run_train_demo(const TrainConfig& config, const ToyTaskOptions& options) {
  const ToyTask task = make_toy_task(config.seed, options);
  TrainConfig cfg = config;
  cfg.vocab = task.vocab;
  TrainDemoResult result;
  cfg.consistency = true;
  result.consistency = train_on_task(task, cfg);
  cfg.consistency = false;
  result.supervised = train_on_task(task, cfg);
  return result;
}

}  // namespace formality
