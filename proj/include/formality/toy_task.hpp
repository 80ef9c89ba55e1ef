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

#include <cstdint>
#include <string>
#include <vector>

#include "formality/seq2seq.hpp"
#include "formality/trainer.hpp"

namespace formality {

/// Synthetic "copy with substitution" task: symbols 1..N (0 is BOS), inputs
/// of length 4..8, target = input mapped through a fixed permutation. The
/// evaluation inputs are swap-perturbed while their targets stay those of
/// the unperturbed source, so a model scores only when its output is
/// invariant to the swap.
struct ToyTask {
  std::size_t vocab = 0;
  std::vector<Token> substitution;  // indexed by symbol; substitution[0] == 0
  std::vector<Example> train;
  std::vector<Example> eval;
};

struct ToyTaskOptions {
  std::size_t symbols = 20;
  std::size_t train_size = 64;
  std::size_t eval_size = 64;
  std::size_t min_length = 4;
  std::size_t max_length = 8;
};

ToyTask make_toy_task(std::uint64_t seed, const ToyTaskOptions& options = {});

/// Percentages on an evaluation set under greedy decoding.
struct ToyEvaluation {
  double exact_match = 0.0;
  double token_accuracy = 0.0;
  double bleu = 0.0;
  double rouge_l = 0.0;
};

ToyEvaluation evaluate(const TinySeq2Seq& model, const std::vector<Example>& eval);

struct TrainingRun {
  std::string name;
  /// Entry 0 holds the losses at the initial parameters; entry k > 0 is the
  /// breakdown reported by step k.
  std::vector<LossBreakdown> log;
  TinySeq2Seq model;
  ToyEvaluation evaluation;
};

/// Trains from the seeded initialization, cycling through task.train.
/// Throws DivergenceError carrying the failing step.
TrainingRun train_on_task(const ToyTask& task, const TrainConfig& config);

struct TrainDemoResult {
  TrainingRun consistency;
  TrainingRun supervised;
};

/// Runs the consistency-weighted and the supervised-only configuration with
/// the same seed, data and step budget.
TrainDemoResult run_train_demo(const TrainConfig& config, const ToyTaskOptions& options = {});

}  // namespace formality
