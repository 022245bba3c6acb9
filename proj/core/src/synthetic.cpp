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

#include "routefilter/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <fmt/format.h>

#include "routefilter/error.hpp"

namespace routefilter {
namespace {

void validate(const SyntheticTopicModel& model) {
  if (model.vocab_size == 0) throw UsageError("synthetic vocabulary must not be empty");
  if (!(model.zipf_exponent >= 0.0) || !std::isfinite(model.zipf_exponent)) {
    throw UsageError("Zipf exponent must be finite and >= 0");
  }
  if (model.max_length == 0 || model.min_length > model.max_length) {
    throw UsageError(fmt::format("invalid document length range [{}, {}]", model.min_length,
                                 model.max_length));
  }
  if (model.max_planted_count == 0) throw UsageError("max_planted_count must be >= 1");
  if (model.n_relevant + model.n_irrelevant == 0) {
    throw UsageError("synthetic model generates no documents");
  }
  if (model.doc_prefix.empty() || model.doc_prefix.find_first_of(" \t\r\n<>") != std::string::npos) {
    throw UsageError(fmt::format("invalid document id prefix '{}'", model.doc_prefix));
  }
  std::set<std::string> names;
  for (const auto& p : model.planted) {
    if (!(p.relevant_rate >= 0.0 && p.relevant_rate <= 1.0) ||
        !(p.irrelevant_rate >= 0.0 && p.irrelevant_rate <= 1.0)) {
      throw UsageError(fmt::format("planted term '{}' has a rate outside [0, 1]", p.term));
    }
    const auto tokens = tokenize(p.term);
    if (tokens.size() != 1 || tokens.front() != p.term) {
      throw UsageError(fmt::format("planted term '{}' is not a single lowercase token", p.term));
    }
    if (!names.insert(p.term).second) {
      throw UsageError(fmt::format("planted term '{}' listed twice", p.term));
    }
  }
  for (const auto& stop : model.stop_terms) {
    if (names.count(to_lower(stop)) != 0) {
      throw UsageError(fmt::format("planted term '{}' is on the stop list", stop));
    }
  }
}

}  // namespace

std::string background_term(std::size_t index) { return fmt::format("w{:04d}", index); }

std::vector<PlantedTerm> make_planted_terms(TopicId topic, std::size_t count,
                                            double relevant_rate, double irrelevant_rate) {
  std::vector<PlantedTerm> terms;
  terms.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    terms.push_back({fmt::format("topic{}term{:02d}", topic, i), relevant_rate, irrelevant_rate});
  }
  return terms;
}

SyntheticCorpus generate_synthetic(const SyntheticTopicModel& model) {
  validate(model);
  std::mt19937_64 engine(model.seed);

  std::vector<double> weights(model.vocab_size);
  for (std::size_t r = 0; r < model.vocab_size; ++r) {
    weights[r] = 1.0 / std::pow(static_cast<double>(r + 1), model.zipf_exponent);
  }
  std::discrete_distribution<std::size_t> background(weights.begin(), weights.end());
  std::uniform_int_distribution<std::size_t> length(model.min_length, model.max_length);
  std::uniform_int_distribution<std::size_t> planted_count(1, model.max_planted_count);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::string> names;
  names.reserve(model.vocab_size);
  for (std::size_t r = 0; r < model.vocab_size; ++r) names.push_back(background_term(r));

  // Interleave the classes so relevant documents are spread through the
  // collection.
  std::vector<bool> relevant(model.n_relevant + model.n_irrelevant, false);
  std::fill(relevant.begin(), relevant.begin() + static_cast<std::ptrdiff_t>(model.n_relevant),
            true);
  std::shuffle(relevant.begin(), relevant.end(), engine);

  const int width = static_cast<int>(std::to_string(relevant.size()).size());
  SyntheticCorpus corpus;
  corpus.documents.reserve(relevant.size());
  corpus.judgments.reserve(relevant.size());
  // Token mode: cumulative per-position thresholds for each class.
  std::vector<double> cumulative[2];
  const double share = model.planted.empty() ? 0.0 : 1.0 / static_cast<double>(model.planted.size());
  for (int cls = 0; cls < 2; ++cls) {
    double acc = 0.0;
    for (const auto& p : model.planted) {
      acc += share * (cls == 1 ? p.relevant_rate : p.irrelevant_rate);
      cumulative[cls].push_back(acc);
    }
  }

  std::vector<std::string_view> tokens;
  for (std::size_t d = 0; d < relevant.size(); ++d) {
    tokens.clear();
    const std::size_t n = length(engine);
    if (model.planting == PlantingMode::token) {
      const auto& cum = cumulative[relevant[d] ? 1 : 0];
      const double total = cum.empty() ? 0.0 : cum.back();
      for (std::size_t i = 0; i < n; ++i) {
        const double u = total > 0.0 ? unit(engine) : 1.0;
        if (u < total) {
          const auto j = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) -
                                                  cum.begin());
          tokens.push_back(model.planted[std::min(j, cum.size() - 1)].term);
        } else {
          tokens.push_back(names[background(engine)]);
        }
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) tokens.push_back(names[background(engine)]);
      for (const auto& p : model.planted) {
        const double rate = relevant[d] ? p.relevant_rate : p.irrelevant_rate;
        if (unit(engine) < rate) {
          const std::size_t count = planted_count(engine);
          for (std::size_t c = 0; c < count; ++c) tokens.push_back(p.term);
        }
      }
      std::shuffle(tokens.begin(), tokens.end(), engine);
    }

    std::string text;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i != 0) text.push_back(i % 16 == 0 ? '\n' : ' ');
      text.append(tokens[i]);
    }
    std::string id = fmt::format("{}-{:0{}}", model.doc_prefix, d, width);
    corpus.judgments.push_back(
        {model.topic, id, relevant[d] ? Relevance::relevant : Relevance::judged_irrelevant});
    corpus.documents.push_back(Document::from_text(std::move(id), std::move(text)));
  }
  return corpus;
}

}  // namespace routefilter
