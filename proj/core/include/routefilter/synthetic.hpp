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
#include <string>
#include <vector>

#include "routefilter/corpus.hpp"
#include "routefilter/qrels.hpp"

namespace routefilter {

struct PlantedTerm {
  std::string term;
  double relevant_rate = 0.0;
  double irrelevant_rate = 0.0;
};

/// How a planted term's class rate is applied.
enum class PlantingMode {
  /// Each token position holds planted term j with probability rate_j / P,
  /// P being the number of planted terms; the mean rate is thus the share of
  /// planted tokens in a document of that class.
  token,
  /// Term j is added to a document with probability rate_j, repeated
  /// 1..max_planted_count times.
  document,
};

/// Generative model for one topic's labelled collection. Documents draw
/// their length uniformly in [min_length, max_length] and their tokens from
/// a Zipf distribution over `vocab_size` background terms, with planted
/// terms mixed in according to `planting`.
struct SyntheticTopicModel {
  TopicId topic = 1;
  std::string doc_prefix = "SYN";
  std::size_t vocab_size = 2000;
  double zipf_exponent = 1.0;
  std::vector<PlantedTerm> planted;
  PlantingMode planting = PlantingMode::token;
  std::vector<std::string> stop_terms;  // must not collide with planted terms
  std::size_t min_length = 80;
  std::size_t max_length = 250;
  std::size_t max_planted_count = 3;
  std::size_t n_relevant = 0;
  std::size_t n_irrelevant = 0;
  std::uint64_t seed = 0;
};

struct SyntheticCorpus {
  std::vector<Document> documents;
  std::vector<Judgment> judgments;  // one per generated document
};

/// Name of the i-th most frequent background term.
std::string background_term(std::size_t index);

/// `count` planted terms named after the topic, all at the given rates.
std::vector<PlantedTerm> make_planted_terms(TopicId topic, std::size_t count,
                                            double relevant_rate, double irrelevant_rate);

/// Throws UsageError on an invalid or degenerate model.
SyntheticCorpus generate_synthetic(const SyntheticTopicModel& model);

}  // namespace routefilter
