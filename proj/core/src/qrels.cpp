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

#include "routefilter/qrels.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "routefilter/error.hpp"

namespace routefilter {
namespace {

template <typename Int>
bool parse_int(std::string_view text, Int& value) {
  const char* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, value);
  return result.ec == std::errc() && result.ptr == end;
}

}  // namespace

std::vector<Judgment> parse_qrels(std::istream& in) {
  std::vector<Judgment> judgments;
  std::set<std::pair<TopicId, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string part; fields >> part;) parts.push_back(std::move(part));
    if (parts.empty()) continue;
    if (parts.size() != 4) {
      throw ParseError(fmt::format("qrels line {}: expected 4 fields, found {}", line_no,
                                   parts.size()),
                       line_no, judgments.size());
    }
    Judgment judgment;
    long long grade = 0;
    if (!parse_int(parts[0], judgment.topic)) {
      throw ParseError(fmt::format("qrels line {}: bad topic '{}'", line_no, parts[0]),
                       line_no, judgments.size());
    }
    if (!parse_int(parts[3], grade)) {
      throw ParseError(fmt::format("qrels line {}: bad judgment '{}'", line_no, parts[3]),
                       line_no, judgments.size());
    }
    judgment.doc_id = parts[2];
    judgment.label = grade > 0 ? Relevance::relevant : Relevance::judged_irrelevant;
    if (!seen.emplace(judgment.topic, judgment.doc_id).second) {
      throw DuplicateKeyError(fmt::format("qrels line {}: duplicate judgment for topic {} doc {}",
                                          line_no, judgment.topic, judgment.doc_id));
    }
    judgments.push_back(std::move(judgment));
  }
  return judgments;
}

Qrels::Qrels(const std::vector<Judgment>& judgments) {
  for (const auto& j : judgments) {
    if (j.label == Relevance::unjudged) continue;
    auto [it, inserted] = by_topic_[j.topic].emplace(j.doc_id, j.label);
    if (!inserted) {
      throw DuplicateKeyError(
          fmt::format("duplicate judgment for topic {} doc {}", j.topic, j.doc_id));
    }
    ++size_;
  }
}

Qrels Qrels::parse(std::istream& in) { return Qrels(parse_qrels(in)); }

Qrels Qrels::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open qrels file '{}'", path));
  return parse(in);
}

Relevance Qrels::label(TopicId topic, std::string_view doc_id) const {
  const auto topic_it = by_topic_.find(topic);
  if (topic_it == by_topic_.end()) return Relevance::unjudged;
  const auto it = topic_it->second.find(doc_id);
  return it == topic_it->second.end() ? Relevance::unjudged : it->second;
}

std::vector<std::string> Qrels::relevant(TopicId topic) const {
  std::vector<std::string> ids;
  if (const auto it = by_topic_.find(topic); it != by_topic_.end()) {
    for (const auto& [doc, label] : it->second) {
      if (label == Relevance::relevant) ids.push_back(doc);
    }
  }
  return ids;
}

std::vector<std::string> Qrels::judged_irrelevant(TopicId topic) const {
  std::vector<std::string> ids;
  if (const auto it = by_topic_.find(topic); it != by_topic_.end()) {
    for (const auto& [doc, label] : it->second) {
      if (label == Relevance::judged_irrelevant) ids.push_back(doc);
    }
  }
  return ids;
}

std::vector<TopicId> Qrels::topics() const {
  std::vector<TopicId> ids;
  ids.reserve(by_topic_.size());
  for (const auto& entry : by_topic_) ids.push_back(entry.first);
  return ids;
}

void write_qrels(std::ostream& out, const std::vector<Judgment>& judgments) {
  for (const auto& j : judgments) {
    if (j.label == Relevance::unjudged) continue;
    out << j.topic << " 0 " << j.doc_id << ' ' << (j.label == Relevance::relevant ? 1 : 0)
        << '\n';
  }
}

}  // namespace routefilter
