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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "routefilter/design_matrix.hpp"

namespace routefilter {

/// Squared cosine of the angle between x and y, in [0, 1]. Returns nullopt
/// when either norm is at or below `tolerance`.
std::optional<double> cos2(std::span<const double> x, std::span<const double> y,
                           double tolerance = 0.0);

struct RankedColumn {
  std::size_t column = 0;
  double cos2 = 0.0;
  /// Dimension of the subspace the selection was made in: N - k at
  /// iteration k (N - 1 - k with an intercept).
  std::int64_t residual_dimension = 0;
  /// Appended with cos2 = 0 because its residual vanished or the output
  /// was already fully explained.
  bool exhausted = false;
};

struct OrthogonalRankingOptions {
  /// Projects the constant vector out of every column and the output before
  /// ranking, so selection happens in the complement of a bias term.
  bool intercept = false;
  /// Degenerate-norm guard, relative to the largest original column norm
  /// (and to the output norm for the output).
  double relative_tolerance = 1e-10;
  /// cos2 values within this relative distance of the best are ties.
  double tie_tolerance = 1e-12;
};

/// Forward orthogonal least-squares ranking, one modified Gram-Schmidt
/// step at a time. Each step picks the unranked column whose residual has
/// the largest cos2 with the residual output (ties to the lower index), then
/// removes that direction from the remaining columns and the output.
class OrthogonalRanker {
 public:
  explicit OrthogonalRanker(const DesignMatrix& matrix, OrthogonalRankingOptions options = {});

  bool done() const noexcept { return ranking_.size() == residuals_.size(); }

  /// Ranks one more column. Once no column can be selected (all residuals
  /// degenerate or the output explained), every unranked column is appended
  /// in original order with cos2 = 0.
  void step();

  const std::vector<RankedColumn>& ranking() const noexcept { return ranking_; }

  std::span<const double> residual_column(std::size_t k) const { return residuals_[k]; }
  std::span<const double> residual_target() const noexcept { return target_; }

  /// Residual of the i-th selected column at the moment it was selected.
  std::span<const double> direction(std::size_t i) const { return directions_[i]; }
  std::size_t direction_count() const noexcept { return directions_.size(); }

  bool is_ranked(std::size_t k) const { return ranked_[k]; }

 private:
  void deflate(std::span<const double> u);
  void mark_degenerate();
  void append_exhausted();

  std::vector<std::vector<double>> residuals_;
  std::vector<double> target_;
  std::vector<std::vector<double>> directions_;
  std::vector<RankedColumn> ranking_;
  std::vector<bool> ranked_;
  std::vector<bool> degenerate_;
  double column_tolerance_ = 0.0;
  double target_tolerance_ = 0.0;
  std::int64_t base_dimension_ = 0;
  OrthogonalRankingOptions options_;
};

/// Ranks all Q columns of the design matrix.
std::vector<RankedColumn> gram_schmidt_rank(const DesignMatrix& matrix,
                                            OrthogonalRankingOptions options = {});

}  // namespace routefilter
