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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace formality {

using Token = std::uint32_t;

/// Row-major dense matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// The trainable tensors of the model, also used to hold their gradients.
struct Seq2SeqParams {
  Matrix embedding;  // V x d, shared by encoder and decoder inputs
  Matrix enc_query, enc_key, enc_value;  // encoder self-attention, d x d
  Matrix dec_query, dec_key, dec_value;  // decoder cross-attention, d x d
  Matrix output;  // d x V

  Seq2SeqParams() = default;
  Seq2SeqParams(std::size_t vocab, std::size_t width);

  static constexpr std::size_t kCount = 8;
  static const char* name(std::size_t i);
  Matrix& at(std::size_t i);
  const Matrix& at(std::size_t i) const;

  std::size_t parameter_count() const;
  double squared_norm() const;
  /// this += alpha * other
  void add_scaled(double alpha, const Seq2SeqParams& other);
  void fill(double v);

  friend bool operator==(const Seq2SeqParams&, const Seq2SeqParams&) = default;
};

/// Intermediate activations kept for the backward pass.
struct ForwardCache {
  std::vector<Token> source;
  std::vector<Token> decoder_input;
  Matrix enc_in, enc_q, enc_k, enc_v, enc_attn, enc_out;
  Matrix dec_in, dec_q, dec_k, dec_v, dec_attn, dec_out, dec_norm;
  std::vector<double> dec_rms;
  Matrix logits;
};

/// Single-layer, single-head attention encoder-decoder with fixed
/// sinusoidal positions and residual connections:
///
///   X = E[src] + P,  H = X + softmax(X Wq (X Wk)^T / sqrt d) X Wv
///   Y = E[<bos> tgt[:-1]] + P,  Z = Y + softmax(Y Uq (H Uk)^T / sqrt d) H Uv
///   logits = rms(Z) Wo,  rms(z) = z / sqrt(mean(z^2) + 1e-6)
class TinySeq2Seq {
 public:
  static constexpr Token kBos = 0;
  static constexpr double kRmsEpsilon = 1e-6;

  TinySeq2Seq() = default;
  /// Zero-initialized parameters.
  TinySeq2Seq(std::size_t vocab, std::size_t width);
  /// Gaussian initialization: embeddings unit variance, attention projections
  /// 1/sqrt(width), output projection 3/sqrt(width).
  static TinySeq2Seq random(std::size_t vocab, std::size_t width, std::uint64_t seed);

  std::size_t vocab_size() const { return vocab_; }
  std::size_t width() const { return width_; }
  Seq2SeqParams& params() { return params_; }
  const Seq2SeqParams& params() const { return params_; }

  /// Teacher-forced logits, one row per target position. Throws
  /// std::out_of_range on a token id >= vocab_size() and
  /// std::invalid_argument on an empty source.
  Matrix forward(std::span<const Token> source, std::span<const Token> target) const;
  Matrix forward(std::span<const Token> source, std::span<const Token> target,
                 ForwardCache& cache) const;

  /// Accumulates d(loss)/d(params) into grads given d(loss)/d(logits).
  void backward(const ForwardCache& cache, const Matrix& dlogits, Seq2SeqParams& grads) const;

  /// Greedy decoding of \p length tokens.
  std::vector<Token> greedy_decode(std::span<const Token> source, std::size_t length) const;

  bool all_finite() const;

  // Text snapshot: header, then "param <name> <rows> <cols>" followed by one
  // line of row-major values per row.
  void save(std::ostream& out) const;
  static TinySeq2Seq load(std::istream& in, const std::string& source = "snapshot");

  friend bool operator==(const TinySeq2Seq&, const TinySeq2Seq&) = default;

 private:
  std::size_t vocab_ = 0;
  std::size_t width_ = 0;
  Seq2SeqParams params_;
};

/// Fixed sinusoidal position table (length x width).
Matrix positional_encoding(std::size_t length, std::size_t width);

}  // namespace formality
