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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "routefilter/corpus.hpp"
#include "routefilter/qrels.hpp"

namespace routefilter {

/// The kept terms of one topic, in selection order.
struct TopicVocabulary {
  TopicId topic = 0;
  std::vector<std::string> terms;

  std::size_t size() const noexcept { return terms.size(); }
  bool empty() const noexcept { return terms.empty(); }
  friend bool operator==(const TopicVocabulary&, const TopicVocabulary&) = default;
};

/// x_0 = 1 is the bias input; x_i is -1 for an absent term and
/// tf_i / ln(max(L, 2)) otherwise.
struct FeatureVector {
  std::string doc_id;
  std::vector<double> values;
};

struct TrainingExample {
  FeatureVector features;
  double target = 0.0;  // +1 or -1
};

struct TrainConfig {
  double learning_rate = 1e-3;
  std::size_t max_epochs = 20;
  double lambda = 0.0;      // weight decay on w_1..w_N
  double init_scale = 0.0;  // uniform init in [-s, s]; 0 means zero init
  std::uint64_t seed = 0;

  /// Throws UsageError on a non-positive learning rate or negative lambda.
  void validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// A trained single tanh unit bound to its vocabulary.
struct FilterModel {
  TopicVocabulary vocabulary;
  std::vector<double> weights;  // w_0 (bias) .. w_N
  TrainConfig config;
  std::vector<double> loss_trajectory;  // one entry per epoch run

  friend bool operator==(const FilterModel&, const FilterModel&) = default;
};

FeatureVector encode(const Document& doc, const TopicVocabulary& vocabulary);

/// tanh(w . x), kept strictly inside (-1, 1). Throws DataError on a
/// dimension mismatch.
double predict(std::span<const double> weights, const FeatureVector& features);
double predict(const FilterModel& model, const FeatureVector& features);

/// Mean squared error plus (lambda / 2) * sum_{i>=1} w_i^2. Throws DataError
/// on an empty batch.
double loss(std::span<const double> weights, std::span<const TrainingExample> batch,
            double lambda);

/// Exact gradient of `loss` with respect to the weights.
std::vector<double> gradient(std::span<const double> weights,
                             std::span<const TrainingExample> batch, double lambda);

/// Full-batch gradient descent for exactly `config.max_epochs` epochs; the
/// small fixed budget is the early-stopping rule. Throws DataError on a
/// single-class batch and NumericalError when the loss stops being finite.
FilterModel train(std::span<const TrainingExample> batch, const TrainConfig& config,
                  TopicVocabulary vocabulary = {});

}  // namespace routefilter
