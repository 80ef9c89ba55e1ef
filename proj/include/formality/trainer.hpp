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
#include <span>
#include <vector>

#include "formality/random.hpp"
#include "formality/seq2seq.hpp"

namespace formality {

/// Mean per-position cross-entropy under softmax. Throws
/// std::invalid_argument when the row count differs from the target length.
double supervised_loss(const Matrix& logits, std::span<const Token> targets);
/// Same loss, also writing d(loss)/d(logits).
double supervised_loss(const Matrix& logits, std::span<const Token> targets, Matrix& dlogits);

/// Mean squared element-wise difference between two logit matrices.
double consistency_loss(const Matrix& original, const Matrix& perturbed);
/// Same loss, also writing the gradients with respect to both inputs.
double consistency_loss(const Matrix& original, const Matrix& perturbed, Matrix& d_original,
                        Matrix& d_perturbed);

/// Swaps two distinct, uniformly drawn positions. Sequences shorter than two
/// are returned unchanged.
std::vector<Token> perturb_swap(std::span<const Token> tokens, Rng& rng);

struct LossWeights {
  double alpha_sup = 0.5;
  double alpha_cons = 0.5;
};

/// Inverse-gradient-norm weighting: alpha_i proportional to 1/(g_i + eps),
/// normalized to sum to one.
LossWeights dynamic_weights(double grad_norm_sup, double grad_norm_cons, double eps);

struct TrainConfig {
  double learning_rate = 0.1;
  long steps = 200;
  std::uint64_t seed = 7;
  double eps = 1e-8;
  std::size_t width = 32;
  std::size_t vocab = 21;
  /// false trains on the supervised loss alone (alpha = 1, 0).
  bool consistency = true;
};

struct Example {
  std::vector<Token> input;
  std::vector<Token> target;
};

struct LossBreakdown {
  double loss_sup = 0.0;
  double loss_cons = 0.0;
  double alpha_sup = 1.0;
  double alpha_cons = 0.0;
  double loss_total = 0.0;
  double grad_norm_sup = 0.0;
  double grad_norm_cons = 0.0;
};

/// Losses and per-loss parameter gradients for one example and one fixed
/// perturbation of its input.
struct LossGradients {
  double loss_sup = 0.0;
  double loss_cons = 0.0;
  Seq2SeqParams grad_sup;
  Seq2SeqParams grad_cons;
};

LossGradients compute_loss_gradients(const TinySeq2Seq& model, const Example& example,
                                     std::span<const Token> perturbed_input);

/// L_sup and L_cons only (no gradients).
std::pair<double, double> compute_losses(const TinySeq2Seq& model, const Example& example,
                                         std::span<const Token> perturbed_input);

/// One gradient-descent step on alpha_sup * L_sup + alpha_cons * L_cons with
/// the weights held constant. The perturbation is drawn from \p rng. Throws
/// DivergenceError (step 0) on a non-finite loss; callers re-throw with the
/// step number.
LossBreakdown train_step(TinySeq2Seq& model, const Example& example, const TrainConfig& config,
                         Rng& rng);

enum class GradCheckMode { kFull, kSupervisedOnly, kConsistencyOnly };

/// Max over all parameters of |analytic - numeric| / max(1, |numeric|), with
/// central differences of step h on the weighted loss. In kFull mode the
/// weights come from dynamic_weights at the unperturbed parameters and are
/// then frozen; the input perturbation is drawn once from \p seed.
double grad_check(const TinySeq2Seq& model, const Example& example, double h = 1e-5,
                  GradCheckMode mode = GradCheckMode::kFull, std::uint64_t seed = 1,
                  double eps = 1e-8);

}  // namespace formality
