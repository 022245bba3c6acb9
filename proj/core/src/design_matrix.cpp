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

#include "routefilter/design_matrix.hpp"

#include <cmath>

#include <fmt/format.h>

#include "routefilter/error.hpp"

namespace routefilter {

DesignMatrix::DesignMatrix(std::vector<std::vector<double>> columns,
                           std::vector<double> target, std::vector<std::string> term_names)
    : columns_(std::move(columns)), target_(std::move(target)), names_(std::move(term_names)) {
  if (target_.size() < 2) {
    throw DataError(fmt::format("design matrix needs at least 2 rows, got {}", target_.size()));
  }
  if (columns_.empty()) throw DataError("design matrix needs at least one column");
  if (names_.empty()) {
    for (std::size_t k = 0; k < columns_.size(); ++k) names_.push_back(fmt::format("x{}", k));
  }
  if (names_.size() != columns_.size()) {
    throw DataError(fmt::format("{} term names for {} columns", names_.size(), columns_.size()));
  }
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    if (columns_[k].size() != target_.size()) {
      throw DataError(fmt::format("column {} has {} rows, expected {}", k, columns_[k].size(),
                                  target_.size()));
    }
    for (const double v : columns_[k]) {
      if (!std::isfinite(v) || v < 0.0) {
        throw DataError(fmt::format("column {} has an invalid entry {}", k, v));
      }
    }
  }
  bool positive = false;
  bool negative = false;
  for (const double y : target_) {
    if (y == 1.0) {
      positive = true;
    } else if (y == -1.0) {
      negative = true;
    } else {
      throw DataError(fmt::format("desired output {} is not +1 or -1", y));
    }
  }
  if (!positive || !negative) {
    throw DataError("training set holds a single class; both +1 and -1 are required");
  }
}

DesignMatrix build_design_matrix(std::span<const LabeledDocument> training,
                                 const CandidateList& candidates) {
  if (candidates.empty()) throw DataError("design matrix needs at least one candidate term");
  std::vector<std::vector<double>> columns(candidates.size(),
                                           std::vector<double>(training.size(), 0.0));
  std::vector<double> target;
  target.reserve(training.size());
  for (std::size_t n = 0; n < training.size(); ++n) {
    const Document& doc = *training[n].doc;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      columns[k][n] = static_cast<double>(doc.frequency(candidates[k].term));
    }
    target.push_back(static_cast<double>(training[n].label));
  }
  std::vector<std::string> names;
  names.reserve(candidates.size());
  for (const auto& c : candidates) names.push_back(c.term);
  return DesignMatrix(std::move(columns), std::move(target), std::move(names));
}

}  // namespace routefilter
