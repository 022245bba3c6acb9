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

#include "routefilter/model_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "routefilter/error.hpp"

namespace routefilter {
namespace {

constexpr std::string_view kMagic = "# routefilter model v1";

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(std::string_view what) {
    std::string line;
    if (!std::getline(in_, line)) {
      throw ParseError(fmt::format("model file truncated before {}", what), line_no_ + 1, 0);
    }
    ++line_no_;
    return line;
  }

  // Reads "<key> <value...>" and returns the value part.
  std::string keyed(std::string_view key) {
    const std::string line = next(key);
    if (line.size() < key.size() + 1 || line.compare(0, key.size(), key) != 0 ||
        line[key.size()] != ' ') {
      fail(fmt::format("expected '{}'", key));
    }
    return line.substr(key.size() + 1);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(fmt::format("model line {}: {}", line_no_, what), line_no_, 0);
  }

  double real(const std::string& text) const {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      fail(fmt::format("bad number '{}'", text));
    }
    if (used != text.size()) fail(fmt::format("bad number '{}'", text));
    return value;
  }

  unsigned long long integer(const std::string& text) const {
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(text, &used);
    } catch (const std::exception&) {
      fail(fmt::format("bad integer '{}'", text));
    }
    if (used != text.size()) fail(fmt::format("bad integer '{}'", text));
    return value;
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace

void write_model(std::ostream& out, const FilterModel& model) {
  const auto& c = model.config;
  out << kMagic << '\n';
  out << "topic " << model.vocabulary.topic << '\n';
  out << fmt::format("learning_rate {:.17g}\n", c.learning_rate);
  out << "max_epochs " << c.max_epochs << '\n';
  out << fmt::format("lambda {:.17g}\n", c.lambda);
  out << fmt::format("init_scale {:.17g}\n", c.init_scale);
  out << "seed " << c.seed << '\n';
  out << "terms " << model.vocabulary.size() << '\n';
  for (const auto& term : model.vocabulary.terms) out << term << '\n';
  out << "loss " << model.loss_trajectory.size();
  for (const double v : model.loss_trajectory) out << fmt::format(" {:.17g}", v);
  out << '\n';
  out << "weights " << model.weights.size() << '\n';
  for (const double w : model.weights) out << fmt::format("{:.17g}\n", w);
}

FilterModel read_model(std::istream& in) {
  LineReader reader(in);
  if (reader.next("header") != kMagic) reader.fail("not a routefilter model file");

  FilterModel model;
  const std::string topic = reader.keyed("topic");
  try {
    model.vocabulary.topic = std::stoi(topic);
  } catch (const std::exception&) {
    reader.fail(fmt::format("bad topic '{}'", topic));
  }
  model.config.learning_rate = reader.real(reader.keyed("learning_rate"));
  model.config.max_epochs = reader.integer(reader.keyed("max_epochs"));
  model.config.lambda = reader.real(reader.keyed("lambda"));
  model.config.init_scale = reader.real(reader.keyed("init_scale"));
  model.config.seed = reader.integer(reader.keyed("seed"));

  const auto term_count = reader.integer(reader.keyed("terms"));
  for (unsigned long long i = 0; i < term_count; ++i) {
    model.vocabulary.terms.push_back(reader.next("vocabulary term"));
  }

  std::istringstream loss_line(reader.keyed("loss"));
  std::size_t loss_count = 0;
  if (!(loss_line >> loss_count)) reader.fail("bad loss count");
  for (std::size_t i = 0; i < loss_count; ++i) {
    std::string value;
    if (!(loss_line >> value)) reader.fail("loss trajectory shorter than declared");
    model.loss_trajectory.push_back(reader.real(value));
  }

  const auto weight_count = reader.integer(reader.keyed("weights"));
  if (weight_count != model.vocabulary.size() + 1) {
    reader.fail(fmt::format("{} weights for {} terms", weight_count, model.vocabulary.size()));
  }
  for (unsigned long long i = 0; i < weight_count; ++i) {
    model.weights.push_back(reader.real(reader.next("weight")));
  }
  return model;
}

void save_model(const std::string& path, const FilterModel& model) {
  std::ofstream out(path);
  if (!out) throw DataError(fmt::format("cannot write model file '{}'", path));
  write_model(out, model);
}

FilterModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open model file '{}'", path));
  return read_model(in);
}

}  // namespace routefilter
