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
#include <span>
#include <string>
#include <vector>

#include "routefilter/corpus.hpp"
#include "routefilter/frequency_analysis.hpp"

namespace routefilter {

/// A training example; `label` is +1 (relevant) or -1 (irrelevant). The
/// document is owned by the collection it was loaded from.
struct LabeledDocument {
  const Document* doc = nullptr;
  int label = 0;
};

/// N documents by Q candidate terms, stored column-major, with the desired
/// output vector. Entries are nonnegative and the output holds both +1 and
/// -1; the constructor enforces both.
class DesignMatrix {
 public:
  /// Throws DataError on a shape mismatch, N < 2, Q < 1, a non-finite or
  /// negative entry, an output not in {-1, +1}, or a single-class output.
  DesignMatrix(std::vector<std::vector<double>> columns, std::vector<double> target,
               std::vector<std::string> term_names = {});

  std::size_t rows() const noexcept { return target_.size(); }
  std::size_t cols() const noexcept { return columns_.size(); }

  std::span<const double> column(std::size_t k) const { return columns_[k]; }
  std::span<const double> target() const noexcept { return target_; }
  const std::string& term(std::size_t k) const { return names_[k]; }
  const std::vector<std::string>& term_names() const noexcept { return names_; }

  double at(std::size_t row, std::size_t col) const { return columns_[col][row]; }

 private:
  std::vector<std::vector<double>> columns_;
  std::vector<double> target_;
  std::vector<std::string> names_;
};

/// X[n][k] = raw tf of candidate k in document n; row order is input order.
DesignMatrix build_design_matrix(std::span<const LabeledDocument> training,
                                 const CandidateList& candidates);

}  // namespace routefilter
