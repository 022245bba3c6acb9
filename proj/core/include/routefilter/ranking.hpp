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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "routefilter/classifier.hpp"
#include "routefilter/corpus.hpp"
#include "routefilter/qrels.hpp"

namespace routefilter {

inline constexpr std::size_t kDefaultRunDepth = 1000;

struct RunEntry {
  std::size_t rank = 0;  // 1-based
  std::string doc_id;
  double score = 0.0;

  friend bool operator==(const RunEntry&, const RunEntry&) = default;
};

/// Ranked documents of one topic: ranks 1..n, scores non-increasing,
/// doc ids unique.
struct RankedRun {
  TopicId topic = 0;
  std::string run_tag = "routefilter";
  std::vector<RunEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  friend bool operator==(const RankedRun&, const RankedRun&) = default;
};

struct ScoredDocument {
  std::string doc_id;
  double score = 0.0;
};

/// Sorts by descending score, ties by ascending doc id, and keeps the first
/// `limit`. Throws UsageError for limit 0 and DataError on a repeated doc id.
RankedRun rank_scored(TopicId topic, std::vector<ScoredDocument> scored, std::size_t limit,
                      std::string run_tag = "routefilter");

/// Scores every document with encode + predict, then ranks as above.
RankedRun rank_documents(const FilterModel& model, std::span<const Document* const> docs,
                         std::size_t limit = kDefaultRunDepth,
                         std::string run_tag = "routefilter");

/// `topic Q0 doc_id rank score run_tag`, score with 6 decimals.
void write_run(std::ostream& out, const RankedRun& run);
void write_runs(std::ostream& out, std::span<const RankedRun> runs);

/// Parses a run file into per-topic runs (ascending topic), each ordered by
/// its rank column. Throws ParseError with the line number on bad input.
std::vector<RankedRun> read_runs(std::istream& in);

}  // namespace routefilter
