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

#include "routefilter/gram_schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace routefilter {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

// v <- v - (v.u / u.u) u
void remove_component(std::vector<double>& v, std::span<const double> u, double uu) {
  const double scale = dot(v, u) / uu;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= scale * u[i];
}

}  // namespace

std::optional<double> cos2(std::span<const double> x, std::span<const double> y,
                           double tolerance) {
  if (x.size() != y.size()) throw std::invalid_argument("cos2: vector sizes differ");
  const double xx = dot(x, x);
  const double yy = dot(y, y);
  if (std::sqrt(xx) <= tolerance || std::sqrt(yy) <= tolerance) return std::nullopt;
  const double xy = dot(x, y);
  return std::clamp((xy * xy) / (xx * yy), 0.0, 1.0);
}

OrthogonalRanker::OrthogonalRanker(const DesignMatrix& matrix, OrthogonalRankingOptions options)
    : target_(matrix.target().begin(), matrix.target().end()),
      ranked_(matrix.cols(), false),
      degenerate_(matrix.cols(), false),
      options_(options) {
  residuals_.reserve(matrix.cols());
  double max_norm = 0.0;
  for (std::size_t k = 0; k < matrix.cols(); ++k) {
    const auto column = matrix.column(k);
    residuals_.emplace_back(column.begin(), column.end());
    max_norm = std::max(max_norm, std::sqrt(dot(column, column)));
  }
  column_tolerance_ = options.relative_tolerance * max_norm;
  target_tolerance_ = options.relative_tolerance * std::sqrt(dot(target_, target_));
  base_dimension_ = static_cast<std::int64_t>(matrix.rows());

  if (options.intercept) {
    const std::vector<double> ones(matrix.rows(), 1.0);
    deflate(ones);
    --base_dimension_;
  }
  mark_degenerate();
}

// A residual below tolerance lies in the span already removed; what is left
// is rounding noise with no meaningful direction, so it is cleared.
void OrthogonalRanker::mark_degenerate() {
  for (std::size_t k = 0; k < residuals_.size(); ++k) {
    if (ranked_[k] || degenerate_[k]) continue;
    if (std::sqrt(dot(residuals_[k], residuals_[k])) <= column_tolerance_) {
      degenerate_[k] = true;
      std::fill(residuals_[k].begin(), residuals_[k].end(), 0.0);
    }
  }
  if (std::sqrt(dot(target_, target_)) <= target_tolerance_) {
    std::fill(target_.begin(), target_.end(), 0.0);
  }
}

void OrthogonalRanker::deflate(std::span<const double> u) {
  const double uu = dot(u, u);
  for (std::size_t k = 0; k < residuals_.size(); ++k) {
    if (!ranked_[k]) remove_component(residuals_[k], u, uu);
  }
  remove_component(target_, u, uu);
}

void OrthogonalRanker::append_exhausted() {
  for (std::size_t k = 0; k < residuals_.size(); ++k) {
    if (ranked_[k]) continue;
    ranked_[k] = true;
    const auto position = static_cast<std::int64_t>(ranking_.size());
    ranking_.push_back({k, 0.0, base_dimension_ - position, true});
  }
}

void OrthogonalRanker::step() {
  if (done()) return;
  if (std::sqrt(dot(target_, target_)) <= target_tolerance_) {  // fully explained
    append_exhausted();
    return;
  }

  // The cos2 scan is a pure function of the current residuals. Values
  // within the tie tolerance of the best count as equal, so the lowest index
  // wins a tie even when rounding differs between the candidates.
  std::optional<std::size_t> best;
  double best_cos2 = -1.0;
  for (std::size_t k = 0; k < residuals_.size(); ++k) {
    if (ranked_[k] || degenerate_[k]) continue;
    const double value = cos2(residuals_[k], target_).value_or(0.0);
    if (value > best_cos2 + options_.tie_tolerance * std::max(best_cos2, 0.0)) {
      best_cos2 = value;
      best = k;
    }
  }
  if (!best) {
    append_exhausted();
    return;
  }

  const std::size_t selected = *best;
  const auto position = static_cast<std::int64_t>(ranking_.size());
  ranking_.push_back({selected, best_cos2, base_dimension_ - position, false});
  ranked_[selected] = true;
  directions_.push_back(residuals_[selected]);
  deflate(directions_.back());
  mark_degenerate();
}

std::vector<RankedColumn> gram_schmidt_rank(const DesignMatrix& matrix,
                                            OrthogonalRankingOptions options) {
  OrthogonalRanker ranker(matrix, options);
  while (!ranker.done()) ranker.step();
  return ranker.ranking();
}

}  // namespace routefilter
