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

#include "routefilter/metrics.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include <fmt/format.h>

#include "routefilter/error.hpp"

namespace routefilter {
namespace {

std::vector<bool> relevance_flags(const RankedRun& run, const RelevantSet& relevant) {
  std::vector<bool> flags;
  flags.reserve(run.entries.size());
  for (const auto& e : run.entries) flags.push_back(relevant.count(e.doc_id) != 0);
  return flags;
}

std::size_t relevant_in_top(const std::vector<bool>& flags, std::size_t k) {
  const auto end = flags.begin() + static_cast<std::ptrdiff_t>(std::min(k, flags.size()));
  return static_cast<std::size_t>(std::count(flags.begin(), end, true));
}

double ap_from_flags(const std::vector<bool>& flags, std::size_t total) {
  double sum = 0.0;
  std::size_t found = 0;
  for (std::size_t r = 0; r < flags.size(); ++r) {
    if (flags[r]) sum += static_cast<double>(++found) / static_cast<double>(r + 1);
  }
  return sum / static_cast<double>(total);
}

std::array<double, kRecallLevels> iprec_from_flags(const std::vector<bool>& flags,
                                                   std::size_t total) {
  // trec_eval turns each level into a relevant-document count,
  // (long)(level * total + 0.9) in double arithmetic. The rounding is kept:
  // 0.7 * 3 + 0.9 truncates to 2, so two of three relevant reach level 0.7.
  std::array<std::size_t, kRecallLevels> needed{};
  for (std::size_t j = 0; j < kRecallLevels; ++j) {
    const double level = static_cast<double>(j) / 10.0;
    needed[j] = static_cast<std::size_t>(level * static_cast<double>(total) + 0.9);
  }
  std::array<double, kRecallLevels> levels{};
  std::size_t found = 0;
  for (std::size_t r = 0; r < flags.size(); ++r) {
    if (!flags[r]) continue;
    ++found;
    const double precision = static_cast<double>(found) / static_cast<double>(r + 1);
    for (std::size_t j = 0; j < kRecallLevels; ++j) {
      if (found >= needed[j]) levels[j] = std::max(levels[j], precision);
    }
  }
  return levels;
}

}  // namespace

std::optional<double> average_precision(const RankedRun& run, const RelevantSet& relevant) {
  if (relevant.empty()) return std::nullopt;
  return ap_from_flags(relevance_flags(run, relevant), relevant.size());
}

std::optional<double> r_precision(const RankedRun& run, const RelevantSet& relevant) {
  if (relevant.empty()) return std::nullopt;
  const auto flags = relevance_flags(run, relevant);
  return static_cast<double>(relevant_in_top(flags, relevant.size())) /
         static_cast<double>(relevant.size());
}

double precision_at_k(const RankedRun& run, const RelevantSet& relevant, std::size_t k) {
  if (k == 0) throw UsageError("precision depth must be at least 1");
  const auto flags = relevance_flags(run, relevant);
  return static_cast<double>(relevant_in_top(flags, k)) / static_cast<double>(k);
}

std::optional<std::array<double, kRecallLevels>> interpolated_precision(
    const RankedRun& run, const RelevantSet& relevant) {
  if (relevant.empty()) return std::nullopt;
  return iprec_from_flags(relevance_flags(run, relevant), relevant.size());
}

TopicMetrics evaluate_topic(const RankedRun& run, const RelevantSet& relevant) {
  TopicMetrics m;
  m.topic = run.topic;
  m.retrieved = run.size();
  m.relevant_total = relevant.size();
  const auto flags = relevance_flags(run, relevant);
  m.relevant_retrieved = relevant_in_top(flags, flags.size());
  if (relevant.empty()) return m;
  m.average_precision = ap_from_flags(flags, relevant.size());
  m.r_precision = static_cast<double>(relevant_in_top(flags, relevant.size())) /
                  static_cast<double>(relevant.size());
  m.interpolated_precision = iprec_from_flags(flags, relevant.size());
  for (std::size_t i = 0; i < kPrecisionDepths.size(); ++i) {
    m.precision_at[i] = static_cast<double>(relevant_in_top(flags, kPrecisionDepths[i])) /
                        static_cast<double>(kPrecisionDepths[i]);
  }
  return m;
}

MetricsReport aggregate(std::vector<TopicMetrics> per_topic) {
  std::sort(per_topic.begin(), per_topic.end(),
            [](const TopicMetrics& a, const TopicMetrics& b) { return a.topic < b.topic; });
  MetricsReport report;
  TopicMetrics& s = report.summary;
  for (const auto& m : per_topic) {
    if (m.excluded()) {
      report.excluded_topics.push_back(m.topic);
      continue;
    }
    ++report.included;
    s.retrieved += m.retrieved;
    s.relevant_total += m.relevant_total;
    s.relevant_retrieved += m.relevant_retrieved;
    s.average_precision += m.average_precision;
    s.r_precision += m.r_precision;
    for (std::size_t j = 0; j < kRecallLevels; ++j) {
      s.interpolated_precision[j] += m.interpolated_precision[j];
    }
    for (std::size_t i = 0; i < kPrecisionDepths.size(); ++i) s.precision_at[i] += m.precision_at[i];
  }
  if (report.included == 0) {
    throw DataError("no evaluated topic has a relevant document");
  }
  const double n = static_cast<double>(report.included);
  s.average_precision /= n;
  s.r_precision /= n;
  for (auto& v : s.interpolated_precision) v /= n;
  for (auto& v : s.precision_at) v /= n;
  report.topics = std::move(per_topic);
  return report;
}

MetricsReport evaluate_runs(std::span<const RankedRun> runs, const Qrels& qrels) {
  std::vector<TopicMetrics> per_topic;
  per_topic.reserve(runs.size());
  for (const auto& run : runs) {
    const auto ids = qrels.relevant(run.topic);
    per_topic.push_back(evaluate_topic(run, RelevantSet(ids.begin(), ids.end())));
  }
  return aggregate(std::move(per_topic));
}

namespace {

void write_block(std::ostream& out, const std::string& label, const TopicMetrics& m) {
  out << fmt::format("Queryid (Num):    {}\n", label);
  out << "Total number of documents over all queries\n";
  out << fmt::format("    Retrieved:  {:>7}\n", m.retrieved);
  out << fmt::format("    Relevant:   {:>7}\n", m.relevant_total);
  out << fmt::format("    Rel_ret:    {:>7}\n", m.relevant_retrieved);
  out << "Interpolated Recall - Precision Averages:\n";
  for (std::size_t j = 0; j < kRecallLevels; ++j) {
    out << fmt::format("    at {:.2f}       {:.4f}\n", static_cast<double>(j) / 10.0,
                       m.interpolated_precision[j]);
  }
  out << "Average precision (non-interpolated) for all rel docs(averaged over queries)\n";
  out << fmt::format("                  {:.4f}\n", m.average_precision);
  out << "Precision:\n";
  for (std::size_t i = 0; i < kPrecisionDepths.size(); ++i) {
    out << fmt::format("  At {:>4} docs:   {:.4f}\n", kPrecisionDepths[i], m.precision_at[i]);
  }
  out << "R-Precision (precision after R (= num_rel for a query) docs retrieved):\n";
  out << fmt::format("    Exact:        {:.4f}\n", m.r_precision);
}

void write_rows(std::ostream& out, const std::string& label, const TopicMetrics& m) {
  out << fmt::format("num_ret\t{}\t{}\n", label, m.retrieved);
  out << fmt::format("num_rel\t{}\t{}\n", label, m.relevant_total);
  out << fmt::format("num_rel_ret\t{}\t{}\n", label, m.relevant_retrieved);
  out << fmt::format("map\t{}\t{:.4f}\n", label, m.average_precision);
  out << fmt::format("Rprec\t{}\t{:.4f}\n", label, m.r_precision);
  for (std::size_t j = 0; j < kRecallLevels; ++j) {
    out << fmt::format("iprec_at_recall_{:.2f}\t{}\t{:.4f}\n", static_cast<double>(j) / 10.0,
                       label, m.interpolated_precision[j]);
  }
  for (std::size_t i = 0; i < kPrecisionDepths.size(); ++i) {
    out << fmt::format("P_{}\t{}\t{:.4f}\n", kPrecisionDepths[i], label, m.precision_at[i]);
  }
}

}  // namespace

void write_report_text(std::ostream& out, const MetricsReport& report) {
  for (const auto& m : report.topics) {
    if (m.excluded()) continue;
    write_block(out, std::to_string(m.topic), m);
    out << '\n';
  }
  write_block(out, fmt::format("all ({})", report.included), report.summary);
  if (!report.excluded_topics.empty()) {
    out << "Excluded topics (no relevant documents):";
    for (const TopicId t : report.excluded_topics) out << ' ' << t;
    out << '\n';
  }
}

void write_report_tsv(std::ostream& out, const MetricsReport& report) {
  for (const auto& m : report.topics) {
    if (!m.excluded()) write_rows(out, std::to_string(m.topic), m);
  }
  out << fmt::format("num_q\tall\t{}\n", report.included);
  write_rows(out, "all", report.summary);
  for (const TopicId t : report.excluded_topics) out << fmt::format("excluded\t{}\t1\n", t);
}

}  // namespace routefilter
