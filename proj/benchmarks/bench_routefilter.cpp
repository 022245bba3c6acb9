/*
 * Copyright 2026 The routefilter Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Hot paths of a topic: the Gram-Schmidt ranking over the candidate pool,
// the probe distribution, classifier training and document encoding.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "routefilter/classifier.hpp"
#include "routefilter/corpus.hpp"
#include "routefilter/design_matrix.hpp"
#include "routefilter/gram_schmidt.hpp"
#include "routefilter/probe.hpp"

namespace {

using namespace routefilter;

// Sparse term counts shaped like a training set: few documents hold any
// given candidate term.
DesignMatrix sparse_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution present(0.05);
  std::uniform_int_distribution<int> count(1, 4);
  std::vector<std::vector<double>> columns(cols, std::vector<double>(rows, 0.0));
  for (auto& c : columns) {
    for (auto& v : c) v = present(rng) ? count(rng) : 0.0;
  }
  std::vector<double> target(rows, -1.0);
  for (std::size_t i = 0; i < rows; i += 50) target[i] = 1.0;
  return DesignMatrix(std::move(columns), std::move(target));
}

void BM_GramSchmidtRank(benchmark::State& state) {
  const auto m = sparse_matrix(static_cast<std::size_t>(state.range(0)),
                               static_cast<std::size_t>(state.range(1)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(gram_schmidt_rank(m, {.intercept = true}));
}
BENCHMARK(BM_GramSchmidtRank)->Args({1000, 50})->Args({3060, 150})->Unit(benchmark::kMillisecond);

void BM_ProbeExceedance(benchmark::State& state) {
  const auto d = state.range(0);
  double c = 0.0;
  for (auto _ : state) {
    c = c >= 0.9 ? 0.001 : c + 0.001;
    benchmark::DoNotOptimize(probe_exceedance(c, d));
  }
}
BENCHMARK(BM_ProbeExceedance)->Arg(10)->Arg(3000);

void BM_MonteCarloProbe(benchmark::State& state) {
  MonteCarloProbe probe(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(probe.exceedance(0.01, 3000));
}
BENCHMARK(BM_MonteCarloProbe)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_Train(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> x(-1.0, 2.0);
  std::vector<TrainingExample> batch(n);
  for (std::size_t i = 0; i < n; ++i) {
    batch[i].features.values.assign(dim + 1, 1.0);
    for (std::size_t j = 1; j <= dim; ++j) batch[i].features.values[j] = x(rng);
    batch[i].target = i % 50 == 0 ? 1.0 : -1.0;
  }
  for (auto _ : state) benchmark::DoNotOptimize(train(batch, {}));
}
BENCHMARK(BM_Train)->Args({3060, 25})->Unit(benchmark::kMillisecond);

void BM_Encode(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < 200; ++i) text += "w" + std::to_string(i % 120) + ' ';
  const Document doc = Document::from_text("D", text);
  TopicVocabulary vocabulary;
  for (int i = 0; i < 25; ++i) vocabulary.terms.push_back("w" + std::to_string(i * 7));
  for (auto _ : state) benchmark::DoNotOptimize(encode(doc, vocabulary));
}
BENCHMARK(BM_Encode);

}  // namespace

BENCHMARK_MAIN();
