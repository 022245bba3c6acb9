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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "routefilter/qrels.hpp"
#include "routefilter/ranking.hpp"

namespace routefilter {

inline constexpr std::array<std::size_t, 9> kPrecisionDepths = {5,   10,  15,  20,  30,
                                                                100, 200, 500, 1000};
inline constexpr std::size_t kRecallLevels = 11;

using RelevantSet = std::unordered_set<std::string>;

// Every metric treats unjudged and judged-irrelevant documents alike, and a
// run shorter than the depth asked for is padded with non-relevant entries.
// Functions returning optional give nullopt for an empty relevant set; such
// topics are excluded from aggregates.

/// Uninterpolated average precision: sum of precision at each relevant
/// rank, divided by the total number of relevant documents.
std::optional<double> average_precision(const RankedRun& run, const RelevantSet& relevant);

/// Precision after R = |relevant| documents.
std::optional<double> r_precision(const RankedRun& run, const RelevantSet& relevant);

/// Throws UsageError for k = 0.
double precision_at_k(const RankedRun& run, const RelevantSet& relevant, std::size_t k);

/// Max precision over ranks whose recall reaches 0.0, 0.1, ..., 1.0, with a
/// level counted as reached the way trec_eval counts it (see metrics.cpp).
std::optional<std::array<double, kRecallLevels>> interpolated_precision(
    const RankedRun& run, const RelevantSet& relevant);

struct TopicMetrics {
  TopicId topic = 0;
  std::size_t retrieved = 0;
  std::size_t relevant_total = 0;
  std::size_t relevant_retrieved = 0;
  double average_precision = 0.0;
  double r_precision = 0.0;
  std::array<double, kRecallLevels> interpolated_precision{};
  std::array<double, kPrecisionDepths.size()> precision_at{};

  bool excluded() const noexcept { return relevant_total == 0; }
};

TopicMetrics evaluate_topic(const RankedRun& run, const RelevantSet& relevant);

struct MetricsReport {
  std::vector<TopicMetrics> topics;  // ascending topic id, excluded ones included
  TopicMetrics summary;              // means (rates) and sums (counts) over included topics
  std::size_t included = 0;
  std::vector<TopicId> excluded_topics;
};

/// Folds per-topic metrics in ascending topic order. Throws DataError when
/// no topic has a relevant document.
MetricsReport aggregate(std::vector<TopicMetrics> per_topic);

/// Evaluates each run against the qrels' relevant documents of its topic.
MetricsReport evaluate_runs(std::span<const RankedRun> runs, const Qrels& qrels);

/// Plain-text block in the classic trec_eval summary layout, per topic then
/// over all included topics.
void write_report_text(std::ostream& out, const MetricsReport& report);

/// Tab-separated `measure topic value` lines, topic `all` for the summary.
void write_report_tsv(std::ostream& out, const MetricsReport& report);

}  // namespace routefilter
