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

#include "routefilter/ranking.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "routefilter/error.hpp"

namespace routefilter {

RankedRun rank_scored(TopicId topic, std::vector<ScoredDocument> scored, std::size_t limit,
                      std::string run_tag) {
  if (limit == 0) throw UsageError("run depth must be at least 1");
  if (run_tag.empty() || run_tag.find_first_of(" \t\r\n") != std::string::npos) {
    throw UsageError(fmt::format("run tag '{}' must be a single non-empty word", run_tag));
  }
  {
    std::unordered_set<std::string_view> seen;
    for (const auto& s : scored) {
      if (!seen.insert(s.doc_id).second) {
        throw DataError(fmt::format("document '{}' scored twice", s.doc_id));
      }
    }
  }
  const auto before = [](const ScoredDocument& a, const ScoredDocument& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  };
  const std::size_t depth = std::min(limit, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(depth),
                    scored.end(), before);

  RankedRun run;
  run.topic = topic;
  run.run_tag = std::move(run_tag);
  run.entries.reserve(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    run.entries.push_back({i + 1, std::move(scored[i].doc_id), scored[i].score});
  }
  return run;
}

RankedRun rank_documents(const FilterModel& model, std::span<const Document* const> docs,
                         std::size_t limit, std::string run_tag) {
  std::vector<ScoredDocument> scored;
  scored.reserve(docs.size());
  for (const Document* doc : docs) {
    scored.push_back({doc->id(), predict(model, encode(*doc, model.vocabulary))});
  }
  return rank_scored(model.vocabulary.topic, std::move(scored), limit, std::move(run_tag));
}

void write_run(std::ostream& out, const RankedRun& run) {
  for (const auto& e : run.entries) {
    out << fmt::format("{} Q0 {} {} {:.6f} {}\n", run.topic, e.doc_id, e.rank, e.score,
                       run.run_tag);
  }
}

void write_runs(std::ostream& out, std::span<const RankedRun> runs) {
  for (const auto& run : runs) write_run(out, run);
}

std::vector<RankedRun> read_runs(std::istream& in) {
  std::map<TopicId, RankedRun> by_topic;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string part; fields >> part;) parts.push_back(std::move(part));
    if (parts.empty()) continue;
    if (parts.size() != 6) {
      throw ParseError(
          fmt::format("run line {}: expected 6 fields, found {}", line_no, parts.size()),
          line_no, 0);
    }
    TopicId topic = 0;
    RunEntry entry;
    try {
      std::size_t used = 0;
      topic = std::stoi(parts[0], &used);
      if (used != parts[0].size()) throw std::invalid_argument("topic");
      entry.rank = std::stoul(parts[3], &used);
      if (used != parts[3].size()) throw std::invalid_argument("rank");
      entry.score = std::stod(parts[4], &used);
      if (used != parts[4].size()) throw std::invalid_argument("score");
    } catch (const std::exception&) {
      throw ParseError(fmt::format("run line {}: malformed numeric field", line_no), line_no, 0);
    }
    entry.doc_id = parts[2];
    auto& run = by_topic[topic];
    run.topic = topic;
    run.run_tag = parts[5];
    run.entries.push_back(std::move(entry));
  }

  std::vector<RankedRun> runs;
  runs.reserve(by_topic.size());
  for (auto& [topic, run] : by_topic) {
    std::stable_sort(run.entries.begin(), run.entries.end(),
                     [](const RunEntry& a, const RunEntry& b) { return a.rank < b.rank; });
    std::unordered_set<std::string_view> seen;
    for (const auto& e : run.entries) {
      if (!seen.insert(e.doc_id).second) {
        throw DataError(fmt::format("run for topic {} lists '{}' twice", topic, e.doc_id));
      }
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

}  // namespace routefilter
