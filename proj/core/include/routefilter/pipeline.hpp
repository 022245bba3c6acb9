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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "routefilter/classifier.hpp"
#include "routefilter/config.hpp"
#include "routefilter/corpus.hpp"
#include "routefilter/design_matrix.hpp"
#include "routefilter/error.hpp"
#include "routefilter/frequency_analysis.hpp"
#include "routefilter/metrics.hpp"
#include "routefilter/qrels.hpp"
#include "routefilter/ranking.hpp"
#include "routefilter/selection.hpp"
#include "routefilter/synthetic.hpp"

namespace routefilter {

struct Collection {
  std::string name;
  std::vector<Document> documents;
};

/// Everything loaded once before topics fan out; read-only afterwards.
class Workspace {
 public:
  Workspace(std::vector<Collection> collections, Qrels qrels, StopList stop);

  const Collection& collection(std::string_view name) const;
  /// Documents of the named collections, in configuration then file order.
  std::vector<const Document*> documents(const std::vector<std::string>& names) const;

  const Qrels& qrels() const noexcept { return qrels_; }
  const StopList& stop_list() const noexcept { return stop_; }

 private:
  std::vector<Collection> collections_;
  Qrels qrels_;
  StopList stop_;
};

/// Loads every configured collection, the qrels and the stop list. Throws
/// DataError if a doc id appears in two collections.
Workspace load_workspace(const PipelineConfig& config);

/// All relevant documents of `pool` (label +1, pool order) followed by
/// min(n_irrelevant, available) negatives sampled uniformly without
/// replacement (label -1, pool order). The negative pool holds documents
/// that are unjudged for the topic, or judged irrelevant with
/// NegativePool::judged. Returns nullopt when the topic has no relevant
/// document in the pool; throws DataError when the negative pool is empty.
std::optional<std::vector<LabeledDocument>> build_training_set(
    const Qrels& qrels, std::span<const Document* const> pool, TopicId topic,
    std::size_t n_irrelevant, std::uint64_t seed, NegativePool negatives = NegativePool::unjudged);

/// One topic's settings with its derived seed.
struct TopicSpec {
  TopicId topic = 0;
  TopicSettings settings;
  std::uint64_t seed = 0;  // master seed; streams are derived per topic
};

TopicSpec make_topic_spec(const PipelineConfig& config, TopicId topic);

/// Data shared by all topics of one run.
struct PipelineContext {
  const Workspace& workspace;
  const CorpusStats& reference;
  std::vector<const Document*> training_pool;
  std::vector<const Document*> test_docs;
  std::unordered_set<std::string_view> test_ids;
};

PipelineContext make_context(const Workspace& workspace, const CorpusStats& reference,
                             const TopicSettings& settings);

CorpusStats reference_stats(const Workspace& workspace, const TopicSettings& settings);

struct TopicSelection {
  std::vector<LabeledDocument> training;
  CandidateList candidates;
  SelectionResult selection;
};

/// Training set, frequency analysis and probe-cut selection. nullopt when
/// the topic has no relevant training document.
std::optional<TopicSelection> select_topic(const TopicSpec& spec, const PipelineContext& ctx);

std::vector<TrainingExample> encode_training_set(std::span<const LabeledDocument> training,
                                                 const TopicVocabulary& vocabulary);

FilterModel train_topic(const TopicSpec& spec, std::span<const LabeledDocument> training,
                        const TopicVocabulary& vocabulary);

RankedRun rank_topic(const TopicSpec& spec, const PipelineContext& ctx, const FilterModel& model);

/// Relevant documents of the topic that belong to the test collection.
RelevantSet test_relevant_set(const TopicSpec& spec, const PipelineContext& ctx);

enum class TopicStatus { completed, skipped, failed };

std::string_view to_string(TopicStatus status);

struct TopicOutcome {
  TopicId topic = 0;
  TopicStatus status = TopicStatus::failed;
  std::vector<std::string> warnings;
  std::string failure;
  std::optional<ErrorKind> error;  // set when a module error failed the topic

  CandidateList candidates;
  SelectionResult selection;
  FilterModel model;
  RankedRun run;
  TopicMetrics metrics;
};

/// Frequency analysis -> design matrix -> selection -> training -> ranking
/// -> metrics. With `out_dir` set, a completed topic writes candidates.tsv,
/// selection.tsv, model.txt, run.txt, report.txt and report.tsv under
/// `out_dir/topic_<id>/`. Module errors propagate; an empty vocabulary
/// after the probe cut yields a failed outcome.
TopicOutcome run_topic(const TopicSpec& spec, const PipelineContext& ctx,
                       const std::filesystem::path* out_dir = nullptr);

struct RunAllResult {
  std::vector<TopicOutcome> outcomes;  // ascending topic id
  std::optional<MetricsReport> report;
};

/// Runs every topic (concurrently when config.threads != 1), then writes
/// `run.txt`, `report.txt`, `report.tsv` and `topics.tsv` under config.out.
/// Topic failures are recorded; throws DataError if no topic completed.
RunAllResult run_all(const PipelineConfig& config);

/// Settings of a generated multi-topic workspace.
struct SyntheticSuite {
  std::vector<TopicId> topics = {401};
  std::size_t planted_terms = 10;
  double relevant_rate = 0.3;
  double irrelevant_rate = 0.01;
  PlantingMode planting = PlantingMode::token;
  std::size_t vocab_size = 2000;
  std::size_t train_relevant = 60;
  std::size_t train_irrelevant = 3000;  // negatives sampled per topic
  std::size_t spare_irrelevant = 1000;  // extra pool so the sample depends on the seed
  std::size_t test_relevant = 20;
  std::size_t test_irrelevant = 2000;
  std::uint64_t seed = 1;
};

/// Writes train.trec, test.trec, qrels.txt, stoplist.txt and
/// synthetic.conf into `dir`. Qrels carry every test judgment but only the
/// relevant training judgments, so the training negatives stay unjudged.
/// The training collection holds train_irrelevant + spare_irrelevant
/// unjudged documents per topic, of which train_irrelevant are sampled.
PipelineConfig write_synthetic_workspace(const std::filesystem::path& dir,
                                         const SyntheticSuite& suite);

/// The generative model used for one side (train or test) of a suite.
SyntheticTopicModel synthetic_topic_model(const SyntheticSuite& suite, TopicId topic, bool test);

}  // namespace routefilter
