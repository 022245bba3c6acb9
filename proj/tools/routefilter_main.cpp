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

// routefilter: per-topic routing filters from judged examples.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "routefilter/config.hpp"
#include "routefilter/corpus.hpp"
#include "routefilter/error.hpp"
#include "routefilter/metrics.hpp"
#include "routefilter/model_io.hpp"
#include "routefilter/pipeline.hpp"
#include "routefilter/ranking.hpp"
#include "routefilter/seed.hpp"
#include "routefilter/selection.hpp"

namespace fs = std::filesystem;
using namespace routefilter;

namespace {

// Flags shared by the pipeline subcommands; names double as config keys.
struct CommonFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "Flat key = value configuration file");
    add(app, "topics", "Topic list, e.g. 351,352,360-365");
    add(app, "risk", "Probe risk in (0, 1)");
    add(app, "neg-samples", "Number of sampled irrelevant training documents");
    add(app, "seed", "Master random seed");
    add(app, "epochs", "Gradient-descent epochs");
    add(app, "lr", "Learning rate");
    add(app, "lambda", "Weight decay coefficient");
    add(app, "stoplist", "Stop list file");
    add(app, "out", "Output directory");
    add(app, "neg-pool", "Negative pool: unjudged or judged")
        ->check(CLI::IsMember({"unjudged", "judged"}));
    add(app, "threads", "Worker threads (0 = hardware concurrency)");
    add(app, "qrels", "Relevance judgments file");
  }

  CLI::Option* add(CLI::App* app, const std::string& key, const std::string& help) {
    auto* opt = app->add_option("--" + key, values[key], help);
    options[key] = opt;
    return opt;
  }

  PipelineConfig load(bool require_file = true) const {
    PipelineConfig config;
    if (!config_path.empty()) {
      config = load_config(config_path);
    } else if (require_file) {
      throw UsageError("--config is required");
    }
    for (const auto& [key, opt] : options) {
      if (opt->count() != 0) apply_setting(config, key, values.at(key), fs::current_path());
    }
    return config;
  }
};

void print_warnings(const TopicOutcome& outcome) {
  for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << '\n';
  if (!outcome.failure.empty()) std::cerr << "error: " << outcome.failure << '\n';
}

std::vector<TopicId> topics_of(const PipelineConfig& config, const Workspace& workspace) {
  return config.topics.empty() ? workspace.qrels().topics() : config.topics;
}

fs::path topic_dir(const PipelineConfig& config, TopicId topic) {
  return config.out / fmt::format("topic_{}", topic);
}

std::ofstream open_output(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  return out;
}

int cmd_ingest(const std::string& docs_path, const std::string& format, const fs::path& out_dir) {
  const auto docs = read_documents_file(docs_path, parse_document_format(format));
  const auto stats = compute_corpus_stats(docs);
  {
    auto out = open_output(out_dir / "documents.tsv");
    write_documents(out, docs);
  }
  {
    auto out = open_output(out_dir / "corpus_stats.tsv");
    write_corpus_stats(out, stats);
  }
  std::cout << fmt::format("{} documents, {} tokens, {} distinct terms\n", stats.doc_count(),
                           stats.total_tokens(), stats.vocabulary_size());
  return 0;
}

int cmd_select(const PipelineConfig& config) {
  config.validate();
  const Workspace ws = load_workspace(config);
  const CorpusStats stats = reference_stats(ws, config.settings);
  const PipelineContext ctx = make_context(ws, stats, config.settings);
  for (const TopicId topic : topics_of(config, ws)) {
    const auto spec = make_topic_spec(config, topic);
    const auto selected = select_topic(spec, ctx);
    if (!selected) {
      std::cerr << fmt::format("warning: topic {}: no relevant training document, skipped\n",
                               topic);
      continue;
    }
    const auto dir = topic_dir(config, topic);
    {
      auto out = open_output(dir / "candidates.tsv");
      write_candidates(out, selected->candidates);
    }
    {
      auto out = open_output(dir / "selection.tsv");
      write_selection(out, topic, selected->selection);
    }
    if (selected->selection.empty()) {
      std::cerr << fmt::format("warning: topic {}: empty vocabulary after the probe cut\n", topic);
    }
    std::cout << fmt::format("topic {}: {} candidates, {} kept\n", topic,
                             selected->candidates.size(), selected->selection.cut_index);
  }
  return 0;
}

int cmd_train(const PipelineConfig& config) {
  config.validate();
  const Workspace ws = load_workspace(config);
  const CorpusStats stats = reference_stats(ws, config.settings);
  const PipelineContext ctx = make_context(ws, stats, config.settings);
  for (const TopicId topic : topics_of(config, ws)) {
    const auto spec = make_topic_spec(config, topic);
    const auto dir = topic_dir(config, topic);
    std::ifstream in(dir / "selection.tsv");
    if (!in) {
      std::cerr << fmt::format("warning: topic {}: no selection.tsv, run `select` first\n", topic);
      continue;
    }
    const auto selection = read_selection(in);
    if (selection.empty()) {
      std::cerr << fmt::format("warning: topic {}: empty vocabulary, not trained\n", topic);
      continue;
    }
    auto training = build_training_set(
        ws.qrels(), ctx.training_pool, topic, spec.settings.neg_samples,
        derive_seed(spec.seed, topic, SeedStream::negative_sampling), spec.settings.neg_pool);
    if (!training) continue;
    const auto model = train_topic(spec, *training, {topic, selection.kept_terms()});
    save_model((dir / "model.txt").string(), model);
    std::cout << fmt::format("topic {}: trained {} weights, final loss {:.6f}\n", topic,
                             model.weights.size(),
                             model.loss_trajectory.empty() ? 0.0 : model.loss_trajectory.back());
  }
  return 0;
}

int cmd_rank(const PipelineConfig& config) {
  config.validate();
  const Workspace ws = load_workspace(config);
  const CorpusStats stats = reference_stats(ws, config.settings);
  const PipelineContext ctx = make_context(ws, stats, config.settings);
  std::vector<RankedRun> runs;
  for (const TopicId topic : topics_of(config, ws)) {
    const auto path = topic_dir(config, topic) / "model.txt";
    if (!fs::exists(path)) {
      std::cerr << fmt::format("warning: topic {}: no model.txt, run `train` first\n", topic);
      continue;
    }
    const auto model = load_model(path.string());
    runs.push_back(rank_topic(make_topic_spec(config, topic), ctx, model));
    auto out = open_output(topic_dir(config, topic) / "run.txt");
    write_run(out, runs.back());
  }
  if (runs.empty()) throw DataError("no topic could be ranked");
  auto out = open_output(config.out / "run.txt");
  write_runs(out, runs);
  return 0;
}

int cmd_eval(const PipelineConfig& config, const std::string& run_path, bool to_stdout) {
  if (config.qrels.empty()) throw UsageError("eval needs --qrels or a config with qrels");
  const fs::path path = run_path.empty() ? config.out / "run.txt" : fs::path(run_path);
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open run file '{}'", path.string()));
  const auto runs = read_runs(in);
  Qrels qrels = Qrels::load(config.qrels.string());

  MetricsReport report;
  if (!config.settings.test.empty()) {
    // Score against the relevant documents of the test collection only.
    const Workspace ws = load_workspace(config);
    const CorpusStats stats = reference_stats(ws, config.settings);
    const PipelineContext ctx = make_context(ws, stats, config.settings);
    std::vector<TopicMetrics> per_topic;
    for (const auto& run : runs) {
      per_topic.push_back(evaluate_topic(run, test_relevant_set(make_topic_spec(config, run.topic), ctx)));
    }
    report = aggregate(std::move(per_topic));
  } else {
    report = evaluate_runs(runs, qrels);
  }
  if (to_stdout) {
    write_report_text(std::cout, report);
  } else {
    auto text = open_output(config.out / "report.txt");
    write_report_text(text, report);
    auto tsv = open_output(config.out / "report.tsv");
    write_report_tsv(tsv, report);
    std::cout << fmt::format("map {:.4f} over {} topics\n", report.summary.average_precision,
                             report.included);
  }
  return 0;
}

int cmd_run_all(const PipelineConfig& config) {
  const auto result = run_all(config);
  int failed = 0;
  for (const auto& outcome : result.outcomes) {
    print_warnings(outcome);
    if (outcome.status == TopicStatus::failed) ++failed;
  }
  if (result.report) {
    std::cout << fmt::format("{} topics evaluated, map {:.4f}, R-prec {:.4f}\n",
                             result.report->included, result.report->summary.average_precision,
                             result.report->summary.r_precision);
  }
  if (failed != 0) std::cerr << fmt::format("{} topic(s) failed\n", failed);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Per-topic document routing: term selection, tanh filters, ranked runs"};
  app.require_subcommand(1);

  std::string docs_path;
  std::string docs_format = "auto";
  std::string ingest_out = "out";
  auto* ingest = app.add_subcommand("ingest", "Tokenize a collection and write corpus statistics");
  ingest->add_option("--docs", docs_path, "Document file (TREC <DOC> or doc_id<TAB>text)")
      ->required();
  ingest->add_option("--format", docs_format, "auto, trec or lines");
  ingest->add_option("--out", ingest_out, "Output directory");

  CommonFlags select_flags, train_flags, rank_flags, eval_flags, run_flags;
  auto* select = app.add_subcommand("select", "Select each topic's vocabulary");
  select_flags.attach(select);
  auto* train_cmd = app.add_subcommand("train", "Train each topic's filter on its vocabulary");
  train_flags.attach(train_cmd);
  auto* rank = app.add_subcommand("rank", "Rank the test collection with trained filters");
  rank_flags.attach(rank);
  auto* eval = app.add_subcommand("eval", "Score a run file against qrels");
  eval_flags.attach(eval);
  std::string run_path;
  bool eval_stdout = false;
  eval->add_option("--run", run_path, "Run file (default OUT/run.txt)");
  eval->add_flag("--stdout", eval_stdout, "Print the text report instead of writing files");
  auto* run_all_cmd = app.add_subcommand("run-all", "Select, train, rank and score every topic");
  run_flags.attach(run_all_cmd);

  SyntheticSuite suite;
  std::string synth_out = "synthetic";
  std::string synth_topics;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic routing workspace");
  synth->add_option("--out", synth_out, "Workspace directory");
  synth->add_option("--seed", suite.seed, "Generator seed");
  synth->add_option("--topics", synth_topics, "Topic list (default 401)");
  synth->add_option("--planted", suite.planted_terms, "Planted terms per topic");
  synth->add_option("--relevant-rate", suite.relevant_rate, "Planted-term rate in relevant docs");
  synth->add_option("--irrelevant-rate", suite.irrelevant_rate,
                    "Planted-term rate in irrelevant docs");
  synth->add_option("--planting", suite.planting, "Planted-term mixing: token or document")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, PlantingMode>{{"token", PlantingMode::token},
                                              {"document", PlantingMode::document}}));
  synth->add_option("--vocab", suite.vocab_size, "Background vocabulary size");
  synth->add_option("--train-relevant", suite.train_relevant);
  synth->add_option("--train-irrelevant", suite.train_irrelevant);
  synth->add_option("--spare-irrelevant", suite.spare_irrelevant,
                    "Unsampled irrelevant training documents");
  synth->add_option("--test-relevant", suite.test_relevant);
  synth->add_option("--test-irrelevant", suite.test_irrelevant);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*ingest) return cmd_ingest(docs_path, docs_format, ingest_out);
    if (*select) return cmd_select(select_flags.load());
    if (*train_cmd) return cmd_train(train_flags.load());
    if (*rank) return cmd_rank(rank_flags.load());
    if (*eval) return cmd_eval(eval_flags.load(false), run_path, eval_stdout);
    if (*run_all_cmd) return cmd_run_all(run_flags.load());
    if (*synth) {
      if (!synth_topics.empty()) suite.topics = parse_topic_list(synth_topics);
      const auto config = write_synthetic_workspace(synth_out, suite);
      std::cout << fmt::format("wrote synthetic workspace to {} ({} topic(s)); run with\n"
                               "  routefilter run-all --config {}\n",
                               synth_out, config.topics.size(),
                               (fs::path(synth_out) / "synthetic.conf").string());
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
