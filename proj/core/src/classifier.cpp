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

#include "routefilter/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "routefilter/error.hpp"

namespace routefilter {
namespace {

double weighted_sum(std::span<const double> weights, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += weights[i] * x[i];
  return s;
}

void check_dimensions(std::span<const double> weights, std::span<const TrainingExample> batch) {
  if (batch.empty()) throw DataError("empty training batch");
  for (const auto& example : batch) {
    if (example.features.values.size() != weights.size()) {
      throw DataError(fmt::format("feature vector '{}' has dimension {}, model has {}",
                                  example.features.doc_id, example.features.values.size(),
                                  weights.size()));
    }
  }
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw UsageError(fmt::format("learning rate must be positive, got {}", learning_rate));
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw UsageError(fmt::format("weight decay lambda must be >= 0, got {}", lambda));
  }
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
    throw UsageError(fmt::format("init scale must be >= 0, got {}", init_scale));
  }
}

FeatureVector encode(const Document& doc, const TopicVocabulary& vocabulary) {
  FeatureVector f;
  f.doc_id = doc.id();
  f.values.reserve(vocabulary.size() + 1);
  f.values.push_back(1.0);
  const double divisor = std::log(static_cast<double>(std::max<std::size_t>(doc.length(), 2)));
  for (const auto& term : vocabulary.terms) {
    const std::uint32_t tf = doc.frequency(term);
    f.values.push_back(tf == 0 ? -1.0 : static_cast<double>(tf) / divisor);
  }
  return f;
}

double predict(std::span<const double> weights, const FeatureVector& features) {
  if (features.values.size() != weights.size()) {
    throw DataError(fmt::format("feature vector '{}' has dimension {}, model has {}",
                                features.doc_id, features.values.size(), weights.size()));
  }
  constexpr double kBound = 1.0 - std::numeric_limits<double>::epsilon() / 2;
  return std::clamp(std::tanh(weighted_sum(weights, features.values)), -kBound, kBound);
}

double predict(const FilterModel& model, const FeatureVector& features) {
  return predict(model.weights, features);
}

double loss(std::span<const double> weights, std::span<const TrainingExample> batch,
            double lambda) {
  check_dimensions(weights, batch);
  double error = 0.0;
  for (const auto& example : batch) {
    const double residual = example.target - std::tanh(weighted_sum(weights, example.features.values));
    error += residual * residual;
  }
  error /= static_cast<double>(batch.size());
  double decay = 0.0;
  for (std::size_t i = 1; i < weights.size(); ++i) decay += weights[i] * weights[i];
  return error + 0.5 * lambda * decay;
}

std::vector<double> gradient(std::span<const double> weights,
                             std::span<const TrainingExample> batch, double lambda) {
  check_dimensions(weights, batch);
  std::vector<double> g(weights.size(), 0.0);
  for (const auto& example : batch) {
    const auto& x = example.features.values;
    const double a = std::tanh(weighted_sum(weights, x));
    const double factor = (example.target - a) * (1.0 - a * a);
    for (std::size_t i = 0; i < x.size(); ++i) g[i] += factor * x[i];
  }
  const double scale = -2.0 / static_cast<double>(batch.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] *= scale;
    if (i >= 1) g[i] += lambda * weights[i];
  }
  return g;
}

FilterModel train(std::span<const TrainingExample> batch, const TrainConfig& config,
                  TopicVocabulary vocabulary) {
  config.validate();
  if (batch.empty()) throw DataError("empty training batch");
  bool positive = false;
  bool negative = false;
  for (const auto& example : batch) {
    if (example.target == 1.0) {
      positive = true;
    } else if (example.target == -1.0) {
      negative = true;
    } else {
      throw DataError(fmt::format("target {} of '{}' is not +1 or -1", example.target,
                                  example.features.doc_id));
    }
  }
  if (!positive || !negative) {
    throw DataError("training batch holds a single class; both targets are required");
  }

  const std::size_t dimension = batch.front().features.values.size();
  if (!vocabulary.empty() && vocabulary.size() + 1 != dimension) {
    throw DataError(fmt::format("vocabulary of {} terms does not match feature dimension {}",
                                vocabulary.size(), dimension));
  }

  FilterModel model;
  model.vocabulary = std::move(vocabulary);
  model.config = config;
  model.weights.assign(dimension, 0.0);
  if (config.init_scale > 0.0) {
    std::mt19937_64 engine(config.seed);
    std::uniform_real_distribution<double> uniform(-config.init_scale, config.init_scale);
    for (auto& w : model.weights) w = uniform(engine);
  }
  check_dimensions(model.weights, batch);

  model.loss_trajectory.reserve(config.max_epochs);
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const auto g = gradient(model.weights, batch, config.lambda);
    for (std::size_t i = 0; i < dimension; ++i) model.weights[i] -= config.learning_rate * g[i];
    const double value = loss(model.weights, batch, config.lambda);
    if (!std::isfinite(value)) {
      throw NumericalError(fmt::format("training diverged at epoch {}", epoch));
    }
    model.loss_trajectory.push_back(value);
  }
  return model;
}

}  // namespace routefilter
