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

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace routefilter {

using TopicId = int;

/// Unjudged is never stored; it is what `Qrels::label` reports on absence.
enum class Relevance { relevant, judged_irrelevant, unjudged };

struct Judgment {
  TopicId topic = 0;
  std::string doc_id;
  Relevance label = Relevance::unjudged;

  friend bool operator==(const Judgment&, const Judgment&) = default;
};

/// Parses `topic iter doc_id judgment` lines, whitespace separated.
/// Judgment > 0 is relevant, anything else judged irrelevant.
/// Throws ParseError with the 1-based line number on malformed input and
/// DuplicateKeyError on a repeated (topic, doc_id) pair.
std::vector<Judgment> parse_qrels(std::istream& in);

/// Relevance judgments indexed by topic.
class Qrels {
 public:
  Qrels() = default;
  explicit Qrels(const std::vector<Judgment>& judgments);

  static Qrels load(const std::string& path);
  static Qrels parse(std::istream& in);

  Relevance label(TopicId topic, std::string_view doc_id) const;

  /// Doc ids judged relevant for the topic, sorted.
  std::vector<std::string> relevant(TopicId topic) const;
  std::vector<std::string> judged_irrelevant(TopicId topic) const;

  /// Topics with at least one judgment, ascending.
  std::vector<TopicId> topics() const;
  bool has_topic(TopicId topic) const { return by_topic_.count(topic) != 0; }
  std::size_t size() const noexcept { return size_; }

 private:
  std::map<TopicId, std::map<std::string, Relevance, std::less<>>> by_topic_;
  std::size_t size_ = 0;
};

/// Writes trec_eval-compatible qrels lines (`topic 0 doc_id 1|0`).
void write_qrels(std::ostream& out, const std::vector<Judgment>& judgments);

}  // namespace routefilter
