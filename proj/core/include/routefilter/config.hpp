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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "routefilter/classifier.hpp"
#include "routefilter/corpus.hpp"
#include "routefilter/frequency_analysis.hpp"
#include "routefilter/qrels.hpp"
#include "routefilter/ranking.hpp"
#include "routefilter/selection.hpp"

namespace routefilter {

enum class NegativePool {
  unjudged,  // never-judged documents, the default
  judged,    // documents judged irrelevant by an assessor
};

NegativePool parse_negative_pool(std::string_view name);
std::string_view to_string(NegativePool pool);

struct CollectionSource {
  std::string name;
  std::filesystem::path path;
  DocumentFormat format = DocumentFormat::automatic;
};

/// Settings shared by every topic of a run.
struct TopicSettings {
  std::vector<std::string> reference;  // collections providing corpus_tf
  std::vector<std::string> training;   // collections providing examples
  std::string test;                    // collection to rank
  SpecificTermOptions candidates;
  SelectionOptions selection{.intercept = true};
  TrainConfig train{.learning_rate = 1e-3, .max_epochs = 20};
  std::size_t neg_samples = 3000;
  NegativePool neg_pool = NegativePool::unjudged;
  std::size_t run_depth = kDefaultRunDepth;
  std::string run_tag = "routefilter";
};

struct PipelineConfig {
  std::vector<CollectionSource> collections;
  std::filesystem::path qrels;
  std::filesystem::path stoplist;  // optional
  std::vector<TopicId> topics;     // empty means every topic in the qrels
  TopicSettings settings;
  std::uint64_t seed = 0;
  std::filesystem::path out = "out";
  std::size_t threads = 1;  // 0 uses the hardware concurrency

  /// Throws UsageError on an inconsistent configuration (unknown
  /// collections, test collection also used for training, ...).
  void validate() const;
};

/// "351,352,360-365" -> {351, 352, 360, ..., 365}, sorted and deduplicated.
std::vector<TopicId> parse_topic_list(std::string_view text);

/// Sets one key. Keys mirror the command-line flags without the leading
/// dashes (`risk`, `neg-samples`, `lr`, ...) plus data keys such as
/// `collection.NAME`, `format.NAME`, `qrels`, `reference`, `training` and
/// `test`. Relative paths are resolved against `base`.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base = {});

/// Flat `key = value` lines; `#` starts a comment.
PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base = {});
PipelineConfig load_config(const std::filesystem::path& path);

void write_config(std::ostream& out, const PipelineConfig& config);

}  // namespace routefilter
