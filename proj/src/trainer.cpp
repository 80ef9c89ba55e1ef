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

#include "formality/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "formality/errors.hpp"
#include "formality/kernels.hpp"

namespace formality {

namespace {

double cross_entropy(const Matrix& logits, std::span<const Token> targets, Matrix* dlogits) {
  if (logits.rows() != targets.size()) {
    throw std::invalid_argument("logits have " + std::to_string(logits.rows()) +
                                " rows for " + std::to_string(targets.size()) + " targets");
  }
  if (dlogits) *dlogits = Matrix(logits.rows(), logits.cols());
  if (targets.empty()) return 0.0;
  const double inv_t = 1.0 / static_cast<double>(targets.size());
  double total = 0.0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (targets[t] >= logits.cols()) throw std::out_of_range("target id outside the vocabulary");
    const auto row = logits.row(t);
    const double mx = *std::max_element(row.begin(), row.end());
    double sum = 0.0;
    for (double v : row) sum += std::exp(v - mx);
    const double log_z = mx + std::log(sum);
    total += log_z - row[targets[t]];
    if (dlogits) {
      auto d = dlogits->row(t);
      for (std::size_t v = 0; v < row.size(); ++v) d[v] = std::exp(row[v] - log_z) * inv_t;
      d[targets[t]] -= inv_t;
    }
  }
  return total * inv_t;
}

void check_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("logit matrices differ in shape");
  }
}

}  // namespace

double supervised_loss(const Matrix& logits, std::span<const Token> targets) {
  return cross_entropy(logits, targets, nullptr);
}

double supervised_loss(const Matrix& logits, std::span<const Token> targets, Matrix& dlogits) {
  return cross_entropy(logits, targets, &dlogits);
}

double consistency_loss(const Matrix& original, const Matrix& perturbed) {
  check_same_shape(original, perturbed);
  if (original.size() == 0) return 0.0;
  return kernels::squared_distance(original.values(), perturbed.values()) /
         static_cast<double>(original.size());
}

double consistency_loss(const Matrix& original, const Matrix& perturbed, Matrix& d_original,
                        Matrix& d_perturbed) {
  const double loss = consistency_loss(original, perturbed);
  d_original = Matrix(original.rows(), original.cols());
  d_perturbed = Matrix(original.rows(), original.cols());
  if (original.size() == 0) return loss;
  const double k = 2.0 / static_cast<double>(original.size());
  const auto a = original.values();
  const auto b = perturbed.values();
  auto da = d_original.values();
  auto db = d_perturbed.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    da[i] = k * (a[i] - b[i]);
    db[i] = -da[i];
  }
  return loss;
}

std::vector<Token> perturb_swap(std::span<const Token> tokens, Rng& rng) {
  std::vector<Token> out(tokens.begin(), tokens.end());
  if (out.size() < 2) return out;
  const std::size_t i = rng.below(out.size());
  std::size_t j = rng.below(out.size() - 1);
  if (j >= i) ++j;
  std::swap(out[i], out[j]);
  return out;
}

LossWeights dynamic_weights(double grad_norm_sup, double grad_norm_cons, double eps) {
  if (grad_norm_sup < 0.0 || grad_norm_cons < 0.0 || eps < 0.0) {
    throw std::invalid_argument("gradient norms and eps must be non-negative");
  }
  // 1/(a) / (1/a + 1/b) == b / (a + b), which avoids dividing by a zero norm.
  const double a = grad_norm_sup + eps;
  const double b = grad_norm_cons + eps;
  if (a + b == 0.0) return {0.5, 0.5};
  return {b / (a + b), a / (a + b)};
}

LossGradients compute_loss_gradients(const TinySeq2Seq& model, const Example& example,
                                     std::span<const Token> perturbed_input) {
  LossGradients out;
  out.grad_sup = Seq2SeqParams(model.vocab_size(), model.width());
  out.grad_cons = Seq2SeqParams(model.vocab_size(), model.width());

  ForwardCache original, perturbed;
  const Matrix logits = model.forward(example.input, example.target, original);
  Matrix d_sup;
  out.loss_sup = supervised_loss(logits, example.target, d_sup);
  model.backward(original, d_sup, out.grad_sup);

  const Matrix logits_p = model.forward(perturbed_input, example.target, perturbed);
  Matrix d_orig, d_pert;
  out.loss_cons = consistency_loss(logits, logits_p, d_orig, d_pert);
  model.backward(original, d_orig, out.grad_cons);
  model.backward(perturbed, d_pert, out.grad_cons);
  return out;
}

std::pair<double, double> compute_losses(const TinySeq2Seq& model, const Example& example,
                                         std::span<const Token> perturbed_input) {
  const Matrix logits = model.forward(example.input, example.target);
  const Matrix logits_p = model.forward(perturbed_input, example.target);
  return {supervised_loss(logits, example.target), consistency_loss(logits, logits_p)};
}

LossBreakdown train_step(TinySeq2Seq& model, const Example& example, const TrainConfig& config,
                         Rng& rng) {
  if (!(config.learning_rate >= 0.0)) throw std::invalid_argument("learning rate must be >= 0");
  const auto perturbed = perturb_swap(example.input, rng);
  const LossGradients lg = compute_loss_gradients(model, example, perturbed);

  LossBreakdown b;
  b.loss_sup = lg.loss_sup;
  b.loss_cons = lg.loss_cons;
  b.grad_norm_sup = std::sqrt(lg.grad_sup.squared_norm());
  b.grad_norm_cons = std::sqrt(lg.grad_cons.squared_norm());
  if (config.consistency) {
    const LossWeights w = dynamic_weights(b.grad_norm_sup, b.grad_norm_cons, config.eps);
    b.alpha_sup = w.alpha_sup;
    b.alpha_cons = w.alpha_cons;
  } else {
    b.alpha_sup = 1.0;
    b.alpha_cons = 0.0;
  }
  b.loss_total = b.alpha_sup * b.loss_sup + b.alpha_cons * b.loss_cons;
  if (!std::isfinite(b.loss_total) || !std::isfinite(b.loss_sup) || !std::isfinite(b.loss_cons)) {
    throw DivergenceError(0, "non-finite loss");
  }

  if (config.learning_rate > 0.0) {
    model.params().add_scaled(-config.learning_rate * b.alpha_sup, lg.grad_sup);
    if (b.alpha_cons != 0.0) {
      model.params().add_scaled(-config.learning_rate * b.alpha_cons, lg.grad_cons);
    }
    if (!model.all_finite()) throw DivergenceError(0, "non-finite parameters after update");
  }
  return b;
}

double grad_check(const TinySeq2Seq& model, const Example& example, double h, GradCheckMode mode,
                  std::uint64_t seed, double eps) {
  Rng rng(seed);
  const auto perturbed = perturb_swap(example.input, rng);
  const LossGradients lg = compute_loss_gradients(model, example, perturbed);

  LossWeights w{1.0, 0.0};
  if (mode == GradCheckMode::kConsistencyOnly) {
    w = {0.0, 1.0};
  } else if (mode == GradCheckMode::kFull) {
    w = dynamic_weights(std::sqrt(lg.grad_sup.squared_norm()),
                        std::sqrt(lg.grad_cons.squared_norm()), eps);
  }

  Seq2SeqParams analytic(model.vocab_size(), model.width());
  analytic.add_scaled(w.alpha_sup, lg.grad_sup);
  analytic.add_scaled(w.alpha_cons, lg.grad_cons);

  auto weighted = [&](const TinySeq2Seq& m) {
    const auto [sup, cons] = compute_losses(m, example, perturbed);
    return w.alpha_sup * sup + w.alpha_cons * cons;
  };

  TinySeq2Seq probe = model;
  double worst = 0.0;
  for (std::size_t p = 0; p < Seq2SeqParams::kCount; ++p) {
    auto values = probe.params().at(p).values();
    const auto grads = analytic.at(p).values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + h;
      const double up = weighted(probe);
      values[i] = saved - h;
      const double down = weighted(probe);
      values[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      worst = std::max(worst, std::abs(grads[i] - numeric) / std::max(1.0, std::abs(numeric)));
    }
  }
  return worst;
}

}  // namespace formality
