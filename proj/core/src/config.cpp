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

#include "routefilter/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "routefilter/error.hpp"

namespace routefilter {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> items;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) items.emplace_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return items;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T result{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, result);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(fmt::format("invalid value '{}' for '{}'", value, key));
  }
  return result;
}

double parse_real(std::string_view key, std::string_view value) {
  const std::string text(value);
  std::size_t used = 0;
  double result = 0.0;
  try {
    result = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw UsageError(fmt::format("invalid value '{}' for '{}'", value, key));
  }
  return result;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw UsageError(fmt::format("invalid boolean '{}' for '{}'", value, key));
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view value) {
  std::filesystem::path p{std::string(value)};
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.lexically_normal();
}

CollectionSource& collection(PipelineConfig& config, std::string_view name) {
  for (auto& c : config.collections) {
    if (c.name == name) return c;
  }
  config.collections.push_back({std::string(name), {}, DocumentFormat::automatic});
  return config.collections.back();
}

std::string_view to_string(DocumentFormat format) {
  switch (format) {
    case DocumentFormat::trec:
      return "trec";
    case DocumentFormat::lines:
      return "lines";
    case DocumentFormat::automatic:
      break;
  }
  return "auto";
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out.push_back(',');
    out += item;
  }
  return out;
}

}  // namespace

NegativePool parse_negative_pool(std::string_view name) {
  if (name == "unjudged") return NegativePool::unjudged;
  if (name == "judged") return NegativePool::judged;
  throw UsageError(fmt::format("unknown negative pool '{}' (unjudged|judged)", name));
}

std::string_view to_string(NegativePool pool) {
  return pool == NegativePool::judged ? "judged" : "unjudged";
}

std::vector<TopicId> parse_topic_list(std::string_view text) {
  std::set<TopicId> topics;
  for (const auto& item : split_list(text)) {
    const auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      topics.insert(parse_number<TopicId>("topics", item));
      continue;
    }
    const auto first = parse_number<TopicId>("topics", trim(std::string_view(item).substr(0, dash)));
    const auto last = parse_number<TopicId>("topics", trim(std::string_view(item).substr(dash + 1)));
    if (last < first) throw UsageError(fmt::format("empty topic range '{}'", item));
    for (TopicId t = first; t <= last; ++t) topics.insert(t);
  }
  if (topics.empty()) throw UsageError(fmt::format("empty topic list '{}'", text));
  return {topics.begin(), topics.end()};
}

void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base) {
  auto& s = config.settings;
  if (key.starts_with("collection.")) {
    collection(config, key.substr(11)).path = resolve(base, value);
  } else if (key.starts_with("format.")) {
    collection(config, key.substr(7)).format = parse_document_format(value);
  } else if (key == "qrels") {
    config.qrels = resolve(base, value);
  } else if (key == "stoplist") {
    config.stoplist = value.empty() ? std::filesystem::path{} : resolve(base, value);
  } else if (key == "topics") {
    config.topics = value == "all" ? std::vector<TopicId>{} : parse_topic_list(value);
  } else if (key == "reference") {
    s.reference = split_list(value);
  } else if (key == "training") {
    s.training = split_list(value);
  } else if (key == "test") {
    s.test = std::string(trim(value));
  } else if (key == "risk") {
    s.selection.risk = parse_real(key, value);
  } else if (key == "neg-samples") {
    s.neg_samples = parse_number<std::size_t>(key, value);
  } else if (key == "neg-pool") {
    s.neg_pool = parse_negative_pool(value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "epochs") {
    s.train.max_epochs = parse_number<std::size_t>(key, value);
  } else if (key == "lr") {
    s.train.learning_rate = parse_real(key, value);
  } else if (key == "lambda") {
    s.train.lambda = parse_real(key, value);
  } else if (key == "init-scale") {
    s.train.init_scale = parse_real(key, value);
  } else if (key == "min-support") {
    s.candidates.min_support = parse_number<std::size_t>(key, value);
  } else if (key == "max-candidates") {
    s.candidates.max_candidates = parse_number<std::size_t>(key, value);
  } else if (key == "min-terms") {
    s.selection.min_terms = parse_number<std::size_t>(key, value);
  } else if (key == "max-terms") {
    s.selection.max_terms = parse_number<std::size_t>(key, value);
  } else if (key == "intercept") {
    s.selection.intercept = parse_bool(key, value);
  } else if (key == "probe") {
    s.selection.probe = parse_probe_method(value);
  } else if (key == "probe-samples") {
    s.selection.probe_samples = parse_number<std::size_t>(key, value);
  } else if (key == "depth") {
    s.run_depth = parse_number<std::size_t>(key, value);
  } else if (key == "run-tag") {
    s.run_tag = std::string(trim(value));
  } else if (key == "out") {
    config.out = resolve(base, value);
  } else if (key == "threads") {
    config.threads = parse_number<std::size_t>(key, value);
  } else {
    throw UsageError(fmt::format("unknown configuration key '{}'", key));
  }
}

PipelineConfig parse_config(std::istream& in, const std::filesystem::path& base) {
  PipelineConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(fmt::format("config line {}: expected 'key = value'", line_no));
    }
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    try {
      apply_setting(config, key, value, base);
    } catch (const UsageError& e) {
      throw UsageError(fmt::format("config line {}: {}", line_no, e.what()));
    }
  }
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(fmt::format("cannot open config file '{}'", path.string()));
  return parse_config(in, path.parent_path());
}

void PipelineConfig::validate() const {
  const auto known = [&](const std::string& name) {
    return std::any_of(collections.begin(), collections.end(),
                       [&](const CollectionSource& c) { return c.name == name; });
  };
  for (const auto& c : collections) {
    if (c.path.empty()) throw UsageError(fmt::format("collection '{}' has no path", c.name));
  }
  const auto& s = settings;
  if (s.training.empty()) throw UsageError("no training collection configured");
  if (s.reference.empty()) throw UsageError("no reference collection configured");
  if (s.test.empty()) throw UsageError("no test collection configured");
  for (const auto& name : s.training) {
    if (!known(name)) throw UsageError(fmt::format("unknown training collection '{}'", name));
    if (name == s.test) {
      throw UsageError(fmt::format("collection '{}' is both training and test", name));
    }
  }
  for (const auto& name : s.reference) {
    if (!known(name)) throw UsageError(fmt::format("unknown reference collection '{}'", name));
  }
  if (!known(s.test)) throw UsageError(fmt::format("unknown test collection '{}'", s.test));
  if (qrels.empty()) throw UsageError("no qrels file configured");
  if (!(s.selection.risk > 0.0 && s.selection.risk < 1.0)) {
    throw UsageError(fmt::format("risk must lie in (0, 1), got {}", s.selection.risk));
  }
  if (s.run_depth == 0) throw UsageError("run depth must be at least 1");
  s.train.validate();
}

void write_config(std::ostream& out, const PipelineConfig& config) {
  const auto& s = config.settings;
  for (const auto& c : config.collections) {
    out << "collection." << c.name << " = " << c.path.string() << '\n';
    if (c.format != DocumentFormat::automatic) {
      out << "format." << c.name << " = " << to_string(c.format) << '\n';
    }
  }
  out << "qrels = " << config.qrels.string() << '\n';
  if (!config.stoplist.empty()) out << "stoplist = " << config.stoplist.string() << '\n';
  if (!config.topics.empty()) {
    std::vector<std::string> ids;
    for (const TopicId t : config.topics) ids.push_back(std::to_string(t));
    out << "topics = " << join(ids) << '\n';
  }
  out << "reference = " << join(s.reference) << '\n';
  out << "training = " << join(s.training) << '\n';
  out << "test = " << s.test << '\n';
  out << fmt::format("risk = {}\n", s.selection.risk);
  out << "neg-samples = " << s.neg_samples << '\n';
  out << "neg-pool = " << to_string(s.neg_pool) << '\n';
  out << "seed = " << config.seed << '\n';
  out << "epochs = " << s.train.max_epochs << '\n';
  out << fmt::format("lr = {}\n", s.train.learning_rate);
  out << fmt::format("lambda = {}\n", s.train.lambda);
  out << fmt::format("init-scale = {}\n", s.train.init_scale);
  out << "min-support = " << s.candidates.min_support << '\n';
  out << "max-candidates = " << s.candidates.max_candidates << '\n';
  out << "min-terms = " << s.selection.min_terms << '\n';
  out << "max-terms = " << s.selection.max_terms << '\n';
  out << "intercept = " << (s.selection.intercept ? "true" : "false") << '\n';
  out << "probe = " << (s.selection.probe == ProbeMethod::analytic ? "analytic" : "monte_carlo")
      << '\n';
  out << "probe-samples = " << s.selection.probe_samples << '\n';
  out << "depth = " << s.run_depth << '\n';
  out << "run-tag = " << s.run_tag << '\n';
  out << "out = " << config.out.string() << '\n';
  out << "threads = " << config.threads << '\n';
}

}  // namespace routefilter
