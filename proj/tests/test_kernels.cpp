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
#include <vector>

#include <doctest.h>

#include "formality/kernels.hpp"
#include "formality/seq2seq.hpp"
#include "formality/toy_task.hpp"

using namespace formality;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> d(0.0, 3.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(gen);
  return v;
}

bool close(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

struct KernelGuard {
  ~KernelGuard() { kernels::select("auto"); }
};

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
  const auto& k = kernels::scalar();
  std::mt19937_64 gen(1);
  for (std::size_t n = 0; n < 40; ++n) {
    const auto a = random_vector(n, gen);
    const auto b = random_vector(n, gen);
    double dot = 0, ss = 0, sd = 0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += a[i] * b[i];
      ss += a[i] * a[i];
      sd += (a[i] - b[i]) * (a[i] - b[i]);
    }
    CHECK(close(k.dot(a.data(), b.data(), n), dot));
    CHECK(close(k.sum_squares(a.data(), n), ss));
    CHECK(close(k.squared_distance(a.data(), b.data(), n), sd));
  }
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const kernels::KernelTable* v = kernels::avx2();
  if (v == nullptr) {
    MESSAGE("AVX2 variant unavailable on this CPU; equivalence not exercised");
    return;
  }
  const auto& s = kernels::scalar();
  std::mt19937_64 gen(2);
  for (std::size_t n = 0; n <= 70; ++n) {
    const auto a = random_vector(n, gen);
    const auto b = random_vector(n, gen);
    CAPTURE(n);
    CHECK(close(v->dot(a.data(), b.data(), n), s.dot(a.data(), b.data(), n)));
    CHECK(close(v->sum_squares(a.data(), n), s.sum_squares(a.data(), n)));
    CHECK(close(v->squared_distance(a.data(), b.data(), n),
                s.squared_distance(a.data(), b.data(), n)));

    auto y1 = b, y2 = b;
    s.axpy(0.37, a.data(), y1.data(), n);
    v->axpy(0.37, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i]));

    auto x1 = a, x2 = a;
    s.scale(-1.5, x1.data(), n);
    v->scale(-1.5, x2.data(), n);
    CHECK(x1 == x2);
  }
}

TEST_CASE("AVX2 handles unaligned offsets") {
  const kernels::KernelTable* v = kernels::avx2();
  if (v == nullptr) return;
  std::mt19937_64 gen(3);
  const auto a = random_vector(64, gen);
  const auto b = random_vector(64, gen);
  for (std::size_t off = 0; off < 4; ++off) {
    const std::size_t n = 64 - off - 3;
    CHECK(close(v->dot(a.data() + off, b.data() + off, n),
                kernels::scalar().dot(a.data() + off, b.data() + off, n)));
  }
}

TEST_CASE("kernel selection") {
  KernelGuard guard;
  CHECK(kernels::select("scalar"));
  CHECK(kernels::active().name == "scalar");
  CHECK_FALSE(kernels::select("sse9"));
  CHECK(kernels::active().name == "scalar");
  CHECK(kernels::select("auto"));
  if (kernels::avx2() != nullptr) {
    CHECK(kernels::select("avx2"));
    CHECK(kernels::active().name == "avx2");
  } else {
    CHECK_FALSE(kernels::select("avx2"));
  }
}

TEST_CASE("model forward and training agree across kernel variants") {
  if (kernels::avx2() == nullptr) return;
  KernelGuard guard;
  const TinySeq2Seq m = TinySeq2Seq::random(12, 16, 4);
  const std::vector<Token> src{1, 2, 3, 4, 5}, tgt{6, 7, 8, 9};

  kernels::select("scalar");
  const Matrix a = m.forward(src, tgt);
  TrainConfig cfg;
  cfg.steps = 20;
  const ToyTask task = make_toy_task(cfg.seed);
  cfg.vocab = task.vocab;
  const TrainingRun ra = train_on_task(task, cfg);

  kernels::select("avx2");
  const Matrix b = m.forward(src, tgt);
  const TrainingRun rb = train_on_task(task, cfg);

  for (std::size_t i = 0; i < a.values().size(); ++i) {
    CHECK(close(a.values()[i], b.values()[i], 1e-10));
  }
  REQUIRE(ra.log.size() == rb.log.size());
  for (std::size_t i = 0; i < ra.log.size(); ++i) {
    CHECK(close(ra.log[i].loss_total, rb.log[i].loss_total, 1e-8));
  }
}
