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

#include "routefilter/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "routefilter/error.hpp"
#include "routefilter/model_io.hpp"
#include "routefilter/seed.hpp"

namespace routefilter {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  return out;
}

void write_topic_artifacts(const std::filesystem::path& dir, const TopicOutcome& outcome,
                           bool completed) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_output(dir / "candidates.tsv");
    write_candidates(out, outcome.candidates);
  }
  {
    auto out = open_output(dir / "selection.tsv");
    write_selection(out, outcome.topic, outcome.selection);
  }
  if (!completed) return;
  {
    auto out = open_output(dir / "model.txt");
    write_model(out, outcome.model);
  }
  {
    auto out = open_output(dir / "run.txt");
    write_run(out, outcome.run);
  }
  if (!outcome.metrics.excluded()) {
    const MetricsReport report = aggregate({outcome.metrics});
    auto text = open_output(dir / "report.txt");
    write_report_text(text, report);
    auto tsv = open_output(dir / "report.tsv");
    write_report_tsv(tsv, report);
  }
}

}  // namespace

Workspace::Workspace(std::vector<Collection> collections, Qrels qrels, StopList stop)
    : collections_(std::move(collections)), qrels_(std::move(qrels)), stop_(std::move(stop)) {
  std::unordered_set<std::string_view> ids;
  for (const auto& c : collections_) {
    for (const auto& doc : c.documents) {
      if (!ids.insert(doc.id()).second) {
        throw DuplicateKeyError(
            fmt::format("doc_id '{}' appears in more than one collection", doc.id()));
      }
    }
  }
}

const Collection& Workspace::collection(std::string_view name) const {
  for (const auto& c : collections_) {
    if (c.name == name) return c;
  }
  throw UsageError(fmt::format("unknown collection '{}'", name));
}

std::vector<const Document*> Workspace::documents(const std::vector<std::string>& names) const {
  std::vector<const Document*> docs;
  for (const auto& name : names) {
    for (const auto& doc : collection(name).documents) docs.push_back(&doc);
  }
  return docs;
}

Workspace load_workspace(const PipelineConfig& config) {
  std::vector<Collection> collections;
  for (const auto& source : config.collections) {
    collections.push_back({source.name, read_documents_file(source.path.string(), source.format)});
  }
  StopList stop = config.stoplist.empty() ? StopList{} : StopList::load(config.stoplist.string());
  return Workspace(std::move(collections), Qrels::load(config.qrels.string()), std::move(stop));
}

std::optional<std::vector<LabeledDocument>> build_training_set(
    const Qrels& qrels, std::span<const Document* const> pool, TopicId topic,
    std::size_t n_irrelevant, std::uint64_t seed, NegativePool negatives) {
  std::vector<LabeledDocument> training;
  std::vector<const Document*> candidates;
  for (const Document* doc : pool) {
    const Relevance label = qrels.label(topic, doc->id());
    if (label == Relevance::relevant) {
      training.push_back({doc, +1});
    } else if ((negatives == NegativePool::unjudged && label == Relevance::unjudged) ||
               (negatives == NegativePool::judged && label == Relevance::judged_irrelevant)) {
      candidates.push_back(doc);
    }
  }
  if (training.empty()) return std::nullopt;
  if (candidates.empty()) {
    throw DataError(fmt::format("topic {}: the {} negative pool is empty", topic,
                                to_string(negatives)));
  }
  std::vector<const Document*> sampled;
  sampled.reserve(std::min(n_irrelevant, candidates.size()));
  std::mt19937_64 engine(seed);
  std::sample(candidates.begin(), candidates.end(), std::back_inserter(sampled), n_irrelevant,
              engine);
  for (const Document* doc : sampled) training.push_back({doc, -1});
  return training;
}

TopicSpec make_topic_spec(const PipelineConfig& config, TopicId topic) {
  return {topic, config.settings, config.seed};
}

CorpusStats reference_stats(const Workspace& workspace, const TopicSettings& settings) {
  return compute_corpus_stats(workspace.documents(settings.reference));
}

PipelineContext make_context(const Workspace& workspace, const CorpusStats& reference,
                             const TopicSettings& settings) {
  PipelineContext ctx{workspace, reference, workspace.documents(settings.training),
                      workspace.documents({settings.test}), {}};
  for (const Document* doc : ctx.test_docs) ctx.test_ids.insert(doc->id());
  return ctx;
}

std::optional<TopicSelection> select_topic(const TopicSpec& spec, const PipelineContext& ctx) {
  const auto& s = spec.settings;
  auto training = build_training_set(
      ctx.workspace.qrels(), ctx.training_pool, spec.topic, s.neg_samples,
      derive_seed(spec.seed, spec.topic, SeedStream::negative_sampling), s.neg_pool);
  if (!training) return std::nullopt;

  std::vector<const Document*> relevant;
  for (const auto& example : *training) {
    if (ctx.test_ids.count(example.doc->id()) != 0) {
      throw std::logic_error(fmt::format("topic {}: test document '{}' leaked into training",
                                         spec.topic, example.doc->id()));
    }
    if (example.label > 0) relevant.push_back(example.doc);
  }

  TopicSelection result;
  result.candidates =
      rank_specific_terms(relevant, ctx.reference, ctx.workspace.stop_list(), s.candidates);
  const DesignMatrix matrix = build_design_matrix(*training, result.candidates);
  SelectionOptions options = s.selection;
  options.seed = derive_seed(spec.seed, spec.topic, SeedStream::probe);
  result.selection = select_terms(matrix, options);
  result.training = std::move(*training);
  return result;
}

std::vector<TrainingExample> encode_training_set(std::span<const LabeledDocument> training,
                                                 const TopicVocabulary& vocabulary) {
  std::vector<TrainingExample> batch;
  batch.reserve(training.size());
  for (const auto& example : training) {
    batch.push_back({encode(*example.doc, vocabulary), static_cast<double>(example.label)});
  }
  return batch;
}

FilterModel train_topic(const TopicSpec& spec, std::span<const LabeledDocument> training,
                        const TopicVocabulary& vocabulary) {
  TrainConfig config = spec.settings.train;
  config.seed = derive_seed(spec.seed, spec.topic, SeedStream::weight_init);
  return train(encode_training_set(training, vocabulary), config, vocabulary);
}

RankedRun rank_topic(const TopicSpec& spec, const PipelineContext& ctx, const FilterModel& model) {
  return rank_documents(model, ctx.test_docs, spec.settings.run_depth, spec.settings.run_tag);
}

RelevantSet test_relevant_set(const TopicSpec& spec, const PipelineContext& ctx) {
  RelevantSet relevant;
  for (auto& id : ctx.workspace.qrels().relevant(spec.topic)) {
    if (ctx.test_ids.count(id) != 0) relevant.insert(std::move(id));
  }
  return relevant;
}

std::string_view to_string(TopicStatus status) {
  switch (status) {
    case TopicStatus::completed:
      return "completed";
    case TopicStatus::skipped:
      return "skipped";
    case TopicStatus::failed:
      break;
  }
  return "failed";
}

TopicOutcome run_topic(const TopicSpec& spec, const PipelineContext& ctx,
                       const std::filesystem::path* out_dir) {
  TopicOutcome outcome;
  outcome.topic = spec.topic;

  auto selected = select_topic(spec, ctx);
  if (!selected) {
    outcome.status = TopicStatus::skipped;
    outcome.warnings.push_back(
        fmt::format("topic {}: no relevant training document, skipped", spec.topic));
    return outcome;
  }
  outcome.candidates = std::move(selected->candidates);
  outcome.selection = std::move(selected->selection);

  const auto topic_dir = out_dir ? *out_dir / fmt::format("topic_{}", spec.topic)
                                 : std::filesystem::path{};
  if (outcome.selection.empty()) {
    outcome.status = TopicStatus::failed;
    outcome.failure = fmt::format("topic {}: empty vocabulary after the probe cut at risk {}",
                                  spec.topic, outcome.selection.risk);
    if (out_dir) write_topic_artifacts(topic_dir, outcome, false);
    return outcome;
  }

  const TopicVocabulary vocabulary{spec.topic, outcome.selection.kept_terms()};
  outcome.model = train_topic(spec, selected->training, vocabulary);
  outcome.run = rank_topic(spec, ctx, outcome.model);
  outcome.metrics = evaluate_topic(outcome.run, test_relevant_set(spec, ctx));
  if (outcome.metrics.excluded()) {
    outcome.warnings.push_back(fmt::format(
        "topic {}: no relevant document in the test collection, excluded from metrics",
        spec.topic));
  }
  outcome.status = TopicStatus::completed;
  if (out_dir) write_topic_artifacts(topic_dir, outcome, true);
  return outcome;
}

RunAllResult run_all(const PipelineConfig& config) {
  config.validate();
  const Workspace workspace = load_workspace(config);
  const CorpusStats reference = reference_stats(workspace, config.settings);
  const PipelineContext ctx = make_context(workspace, reference, config.settings);

  const std::vector<TopicId> topics =
      config.topics.empty() ? workspace.qrels().topics() : config.topics;
  std::filesystem::create_directories(config.out);

  RunAllResult result;
  result.outcomes.resize(topics.size());
  std::exception_ptr fatal;
  std::mutex fatal_mutex;
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < topics.size(); i = next++) {
      const TopicSpec spec = make_topic_spec(config, topics[i]);
      auto& outcome = result.outcomes[i];
      try {
        outcome = run_topic(spec, ctx, &config.out);
      } catch (const Error& e) {
        outcome = TopicOutcome{};
        outcome.topic = topics[i];
        outcome.status = TopicStatus::failed;
        outcome.failure = fmt::format("topic {}: {}", topics[i], e.what());
        outcome.error = e.kind();
      } catch (...) {
        const std::lock_guard lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
      }
    }
  };

  std::size_t threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(topics.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (fatal) std::rethrow_exception(fatal);

  std::vector<RankedRun> runs;
  std::vector<TopicMetrics> metrics;
  for (const auto& outcome : result.outcomes) {
    if (outcome.status != TopicStatus::completed) continue;
    runs.push_back(outcome.run);
    metrics.push_back(outcome.metrics);
  }
  {
    auto out = open_output(config.out / "topics.tsv");
    out << "# topic\tstatus\tcandidates\tkept_terms\tnote\n";
    for (const auto& o : result.outcomes) {
      std::string note = o.failure;
      for (const auto& w : o.warnings) note += (note.empty() ? "" : "; ") + w;
      out << fmt::format("{}\t{}\t{}\t{}\t{}\n", o.topic, to_string(o.status),
                         o.candidates.size(), o.selection.cut_index, note);
    }
  }
  if (runs.empty()) {
    // Only divergence everywhere is a numerical failure of the run.
    const bool numerical = std::all_of(
        result.outcomes.begin(), result.outcomes.end(),
        [](const TopicOutcome& o) { return o.error == ErrorKind::numerical; });
    if (numerical && !result.outcomes.empty()) {
      throw NumericalError("no topic completed: " + result.outcomes.front().failure);
    }
    throw DataError("no topic completed");
  }
  {
    auto out = open_output(config.out / "run.txt");
    write_runs(out, runs);
  }
  if (std::any_of(metrics.begin(), metrics.end(),
                  [](const TopicMetrics& m) { return !m.excluded(); })) {
    result.report = aggregate(metrics);
    auto text = open_output(config.out / "report.txt");
    write_report_text(text, *result.report);
    auto tsv = open_output(config.out / "report.tsv");
    write_report_tsv(tsv, *result.report);
  }
  return result;
}

SyntheticTopicModel synthetic_topic_model(const SyntheticSuite& suite, TopicId topic, bool test) {
  SyntheticTopicModel model;
  model.topic = topic;
  model.doc_prefix = fmt::format("{}{}", test ? "TE" : "TR", topic);
  model.vocab_size = suite.vocab_size;
  model.planted =
      make_planted_terms(topic, suite.planted_terms, suite.relevant_rate, suite.irrelevant_rate);
  model.planting = suite.planting;
  model.stop_terms = {background_term(0), background_term(1)};
  model.n_relevant = test ? suite.test_relevant : suite.train_relevant;
  model.n_irrelevant =
      test ? suite.test_irrelevant : suite.train_irrelevant + suite.spare_irrelevant;
  model.seed = derive_seed(suite.seed, topic,
                           test ? SeedStream::synthetic_test : SeedStream::synthetic_train);
  return model;
}

PipelineConfig write_synthetic_workspace(const std::filesystem::path& dir,
                                         const SyntheticSuite& suite) {
  if (suite.topics.empty()) throw UsageError("synthetic suite needs at least one topic");
  std::filesystem::create_directories(dir);
  auto train_out = open_output(dir / "train.trec");
  auto test_out = open_output(dir / "test.trec");
  auto qrels_out = open_output(dir / "qrels.txt");

  std::vector<std::string> stop_terms;
  for (const TopicId topic : suite.topics) {
    const auto train_model = synthetic_topic_model(suite, topic, false);
    const auto test_model = synthetic_topic_model(suite, topic, true);
    stop_terms = train_model.stop_terms;

    const auto train_corpus = generate_synthetic(train_model);
    write_trec_documents(train_out, train_corpus.documents);
    std::vector<Judgment> train_relevant;
    for (const auto& j : train_corpus.judgments) {
      if (j.label == Relevance::relevant) train_relevant.push_back(j);
    }
    write_qrels(qrels_out, train_relevant);

    const auto test_corpus = generate_synthetic(test_model);
    write_trec_documents(test_out, test_corpus.documents);
    write_qrels(qrels_out, test_corpus.judgments);
  }
  {
    auto stop_out = open_output(dir / "stoplist.txt");
    stop_out << "# most frequent background terms\n";
    for (const auto& term : stop_terms) stop_out << term << '\n';
  }

  PipelineConfig config;
  config.collections = {{"train", "train.trec", DocumentFormat::trec},
                        {"test", "test.trec", DocumentFormat::trec}};
  config.qrels = "qrels.txt";
  config.stoplist = "stoplist.txt";
  config.topics = suite.topics;
  config.settings.reference = {"train"};
  config.settings.training = {"train"};
  config.settings.test = "test";
  config.settings.neg_samples = suite.train_irrelevant;
  config.seed = suite.seed;
  config.out = "out";
  {
    auto conf_out = open_output(dir / "synthetic.conf");
    conf_out << "# generated synthetic routing workspace\n";
    write_config(conf_out, config);
  }
  return load_config(dir / "synthetic.conf");
}

}  // namespace routefilter
