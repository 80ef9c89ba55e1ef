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

#include "formality/seq2seq.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "formality/errors.hpp"
#include "formality/kernels.hpp"
#include "formality/random.hpp"

namespace formality {

namespace {

// C = A B
Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double s = a(i, p);
      if (s != 0.0) kernels::axpy(s, b.row(p), out);
    }
  }
  return c;
}

// C = A B^T
Matrix matmul_bt(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) c(i, j) = kernels::dot(a.row(i), b.row(j));
  }
  return c;
}

// C += A^T B
void add_matmul_at(const Matrix& a, const Matrix& b, Matrix& c) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double s = a(i, p);
      if (s != 0.0) kernels::axpy(s, b.row(i), c.row(p));
    }
  }
}

void add_into(Matrix& dst, const Matrix& src) {
  kernels::axpy(1.0, src.values(), dst.values());
}

void softmax_rows(Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    double mx = r[0];
    for (double v : r) mx = std::max(mx, v);
    double sum = 0.0;
    for (double& v : r) {
      v = std::exp(v - mx);
      sum += v;
    }
    for (double& v : r) v /= sum;
  }
}

// d(scores) from d(probabilities), times the attention scale.
Matrix softmax_backward(const Matrix& probs, const Matrix& dprobs, double scale) {
  Matrix ds(probs.rows(), probs.cols());
  for (std::size_t i = 0; i < probs.rows(); ++i) {
    const double inner = kernels::dot(dprobs.row(i), probs.row(i));
    for (std::size_t j = 0; j < probs.cols(); ++j) {
      ds(i, j) = scale * probs(i, j) * (dprobs(i, j) - inner);
    }
  }
  return ds;
}

Matrix embed(const Matrix& table, std::span<const Token> ids) {
  Matrix out = positional_encoding(ids.size(), table.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) kernels::axpy(1.0, table.row(ids[i]), out.row(i));
  return out;
}

constexpr const char* kSnapshotMagic = "formality-tiny-seq2seq";
constexpr int kSnapshotVersion = 1;

}  // namespace

Matrix positional_encoding(std::size_t length, std::size_t width) {
  Matrix p(length, width);
  for (std::size_t pos = 0; pos < length; ++pos) {
    for (std::size_t i = 0; i < width; ++i) {
      const double rate =
          std::pow(10000.0, static_cast<double>(2 * (i / 2)) / static_cast<double>(width));
      const double angle = static_cast<double>(pos) / rate;
      p(pos, i) = (i % 2 == 0) ? std::sin(angle) : std::cos(angle);
    }
  }
  return p;
}

Seq2SeqParams::Seq2SeqParams(std::size_t vocab, std::size_t width)
    : embedding(vocab, width),
      enc_query(width, width),
      enc_key(width, width),
      enc_value(width, width),
      dec_query(width, width),
      dec_key(width, width),
      dec_value(width, width),
      output(width, vocab) {}

const char* Seq2SeqParams::name(std::size_t i) {
  static const char* const kNames[kCount] = {"embedding", "enc_query", "enc_key", "enc_value",
                                             "dec_query", "dec_key",   "dec_value", "output"};
  return kNames[i];
}

Matrix& Seq2SeqParams::at(std::size_t i) {
  return const_cast<Matrix&>(std::as_const(*this).at(i));
}

const Matrix& Seq2SeqParams::at(std::size_t i) const {
  switch (i) {
    case 0: return embedding;
    case 1: return enc_query;
    case 2: return enc_key;
    case 3: return enc_value;
    case 4: return dec_query;
    case 5: return dec_key;
    case 6: return dec_value;
    case 7: return output;
    default: throw std::out_of_range("parameter index");
  }
}

std::size_t Seq2SeqParams::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < kCount; ++i) n += at(i).size();
  return n;
}

double Seq2SeqParams::squared_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < kCount; ++i) s += kernels::sum_squares(at(i).values());
  return s;
}

void Seq2SeqParams::add_scaled(double alpha, const Seq2SeqParams& other) {
  for (std::size_t i = 0; i < kCount; ++i) kernels::axpy(alpha, other.at(i).values(), at(i).values());
}

void Seq2SeqParams::fill(double v) {
  for (std::size_t i = 0; i < kCount; ++i) at(i).fill(v);
}

TinySeq2Seq::TinySeq2Seq(std::size_t vocab, std::size_t width)
    : vocab_(vocab), width_(width), params_(vocab, width) {
  if (vocab < 2 || width < 1) throw std::invalid_argument("model needs vocab >= 2 and width >= 1");
}

TinySeq2Seq TinySeq2Seq::random(std::size_t vocab, std::size_t width, std::uint64_t seed) {
  TinySeq2Seq m(vocab, width);
  Rng rng(seed);
  const double proj_scale = 1.0 / std::sqrt(static_cast<double>(width));
  for (std::size_t i = 0; i < Seq2SeqParams::kCount; ++i) {
    const double scale = i == 0 ? 1.0 : i == Seq2SeqParams::kCount - 1 ? 3.0 * proj_scale : proj_scale;
    for (double& v : m.params_.at(i).values()) v = scale * rng.normal();
  }
  return m;
}

Matrix TinySeq2Seq::forward(std::span<const Token> source, std::span<const Token> target) const {
  ForwardCache cache;
  return forward(source, target, cache);
}

Matrix TinySeq2Seq::forward(std::span<const Token> source, std::span<const Token> target,
                            ForwardCache& c) const {
  if (source.empty()) throw std::invalid_argument("empty source sequence");
  for (Token t : source) {
    if (t >= vocab_) throw std::out_of_range("source token id " + std::to_string(t) + " >= vocab");
  }
  for (Token t : target) {
    if (t >= vocab_) throw std::out_of_range("target token id " + std::to_string(t) + " >= vocab");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(width_));
  const auto& p = params_;

  c.source.assign(source.begin(), source.end());
  c.enc_in = embed(p.embedding, source);
  c.enc_q = matmul(c.enc_in, p.enc_query);
  c.enc_k = matmul(c.enc_in, p.enc_key);
  c.enc_v = matmul(c.enc_in, p.enc_value);
  c.enc_attn = matmul_bt(c.enc_q, c.enc_k);
  kernels::active().scale(scale, c.enc_attn.values().data(), c.enc_attn.size());
  softmax_rows(c.enc_attn);
  c.enc_out = c.enc_in;
  add_into(c.enc_out, matmul(c.enc_attn, c.enc_v));

  c.decoder_input.clear();
  if (!target.empty()) {
    c.decoder_input.push_back(kBos);
    c.decoder_input.insert(c.decoder_input.end(), target.begin(), target.end() - 1);
  }
  c.dec_in = embed(p.embedding, c.decoder_input);
  c.dec_q = matmul(c.dec_in, p.dec_query);
  c.dec_k = matmul(c.enc_out, p.dec_key);
  c.dec_v = matmul(c.enc_out, p.dec_value);
  c.dec_attn = matmul_bt(c.dec_q, c.dec_k);
  kernels::active().scale(scale, c.dec_attn.values().data(), c.dec_attn.size());
  softmax_rows(c.dec_attn);
  c.dec_out = c.dec_in;
  add_into(c.dec_out, matmul(c.dec_attn, c.dec_v));

  c.dec_norm = c.dec_out;
  c.dec_rms.assign(c.dec_out.rows(), 0.0);
  for (std::size_t t = 0; t < c.dec_out.rows(); ++t) {
    auto row = c.dec_norm.row(t);
    const double ms = kernels::active().sum_squares(row.data(), row.size()) /
                      static_cast<double>(row.size());
    c.dec_rms[t] = std::sqrt(ms + kRmsEpsilon);
    kernels::active().scale(1.0 / c.dec_rms[t], row.data(), row.size());
  }

  c.logits = matmul(c.dec_norm, p.output);
  return c.logits;
}

void TinySeq2Seq::backward(const ForwardCache& c, const Matrix& dlogits,
                           Seq2SeqParams& g) const {
  if (dlogits.rows() != c.logits.rows() || dlogits.cols() != c.logits.cols()) {
    throw std::invalid_argument("dlogits shape does not match the forward pass");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(width_));
  const auto& p = params_;

  // Decoder.
  add_matmul_at(c.dec_norm, dlogits, g.output);
  Matrix d_dec_out = matmul_bt(dlogits, p.output);
  for (std::size_t t = 0; t < d_dec_out.rows(); ++t) {
    auto d = d_dec_out.row(t);
    const auto n = c.dec_norm.row(t);
    const double proj = kernels::dot(d, n) / static_cast<double>(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = (d[j] - n[j] * proj) / c.dec_rms[t];
  }
  Matrix d_dec_in = d_dec_out;

  const Matrix d_dec_attn = matmul_bt(d_dec_out, c.dec_v);
  Matrix d_dec_v(c.dec_v.rows(), c.dec_v.cols());
  add_matmul_at(c.dec_attn, d_dec_out, d_dec_v);
  const Matrix d_dec_scores = softmax_backward(c.dec_attn, d_dec_attn, scale);
  const Matrix d_dec_q = matmul(d_dec_scores, c.dec_k);
  Matrix d_dec_k(c.dec_k.rows(), c.dec_k.cols());
  add_matmul_at(d_dec_scores, c.dec_q, d_dec_k);

  add_matmul_at(c.dec_in, d_dec_q, g.dec_query);
  add_into(d_dec_in, matmul_bt(d_dec_q, p.dec_query));
  add_matmul_at(c.enc_out, d_dec_k, g.dec_key);
  add_matmul_at(c.enc_out, d_dec_v, g.dec_value);
  Matrix d_enc_out = matmul_bt(d_dec_k, p.dec_key);
  add_into(d_enc_out, matmul_bt(d_dec_v, p.dec_value));

  // Encoder.
  Matrix d_enc_in = d_enc_out;
  const Matrix d_enc_attn = matmul_bt(d_enc_out, c.enc_v);
  Matrix d_enc_v(c.enc_v.rows(), c.enc_v.cols());
  add_matmul_at(c.enc_attn, d_enc_out, d_enc_v);
  const Matrix d_enc_scores = softmax_backward(c.enc_attn, d_enc_attn, scale);
  const Matrix d_enc_q = matmul(d_enc_scores, c.enc_k);
  Matrix d_enc_k(c.enc_k.rows(), c.enc_k.cols());
  add_matmul_at(d_enc_scores, c.enc_q, d_enc_k);

  add_matmul_at(c.enc_in, d_enc_q, g.enc_query);
  add_matmul_at(c.enc_in, d_enc_k, g.enc_key);
  add_matmul_at(c.enc_in, d_enc_v, g.enc_value);
  add_into(d_enc_in, matmul_bt(d_enc_q, p.enc_query));
  add_into(d_enc_in, matmul_bt(d_enc_k, p.enc_key));
  add_into(d_enc_in, matmul_bt(d_enc_v, p.enc_value));

  for (std::size_t i = 0; i < c.source.size(); ++i) {
    kernels::axpy(1.0, d_enc_in.row(i), g.embedding.row(c.source[i]));
  }
  for (std::size_t t = 0; t < c.decoder_input.size(); ++t) {
    kernels::axpy(1.0, d_dec_in.row(t), g.embedding.row(c.decoder_input[t]));
  }
}

std::vector<Token> TinySeq2Seq::greedy_decode(std::span<const Token> source,
                                              std::size_t length) const {
  std::vector<Token> out;
  out.reserve(length + 1);
  for (std::size_t t = 0; t < length; ++t) {
    out.push_back(kBos);  // placeholder for the position being predicted
    const Matrix logits = forward(source, out);
    const auto row = logits.row(t);
    std::size_t best = 0;
    for (std::size_t v = 1; v < row.size(); ++v) {
      if (row[v] > row[best]) best = v;
    }
    out.back() = static_cast<Token>(best);
  }
  return out;
}

bool TinySeq2Seq::all_finite() const {
  for (std::size_t i = 0; i < Seq2SeqParams::kCount; ++i) {
    for (double v : params_.at(i).values()) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

void TinySeq2Seq::save(std::ostream& out) const {
  out << kSnapshotMagic << ' ' << kSnapshotVersion << '\n';
  out << "vocab " << vocab_ << '\n' << "width " << width_ << '\n';
  char buf[64];
  for (std::size_t i = 0; i < Seq2SeqParams::kCount; ++i) {
    const Matrix& m = params_.at(i);
    out << "param " << Seq2SeqParams::name(i) << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t col = 0; col < m.cols(); ++col) {
        const auto res = std::to_chars(buf, buf + sizeof buf, m(r, col));
        if (col) out << ' ';
        out.write(buf, res.ptr - buf);
      }
      out << '\n';
    }
  }
}

TinySeq2Seq TinySeq2Seq::load(std::istream& in, const std::string& source) {
  std::string magic;
  int version = 0;
  std::string key;
  std::size_t vocab = 0, width = 0;
  if (!(in >> magic >> version) || magic != kSnapshotMagic) {
    throw FormatError(source, 1, "not a model snapshot");
  }
  if (version != kSnapshotVersion) {
    throw FormatError(source, 1, "unsupported snapshot version " + std::to_string(version));
  }
  if (!(in >> key >> vocab) || key != "vocab" || !(in >> key >> width) || key != "width") {
    throw FormatError(source, 2, "missing vocab/width header");
  }
  TinySeq2Seq m(vocab, width);
  for (std::size_t i = 0; i < Seq2SeqParams::kCount; ++i) {
    std::string name;
    std::size_t rows = 0, cols = 0;
    if (!(in >> key >> name >> rows >> cols) || key != "param") {
      throw FormatError(source, 0, "missing parameter header");
    }
    if (name != Seq2SeqParams::name(i)) {
      throw FormatError(source, 0, "expected parameter '" + std::string(Seq2SeqParams::name(i)) +
                                       "', found '" + name + "'");
    }
    Matrix& target = m.params_.at(i);
    if (rows != target.rows() || cols != target.cols()) {
      throw FormatError(source, 0, "shape mismatch for '" + name + "'");
    }
    for (double& v : target.values()) {
      std::string tok;
      if (!(in >> tok)) throw FormatError(source, 0, "truncated values for '" + name + "'");
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw FormatError(source, 0, "bad value '" + tok + "' in '" + name + "'");
      }
    }
  }
  return m;
}

}  // namespace formality
