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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "routefilter/design_matrix.hpp"
#include "routefilter/qrels.hpp"

namespace routefilter {

enum class ProbeMethod { analytic, monte_carlo };

ProbeMethod parse_probe_method(std::string_view name);

struct SelectionOptions {
  /// Accepted probability that the kept list contains a term no better
  /// than a random probe. Commonly 0.01 or 0.05.
  double risk = 0.05;
  std::size_t min_terms = 0;  // 0 disables the clamp
  std::size_t max_terms = 0;  // 0 disables the clamp
  bool intercept = false;
  ProbeMethod probe = ProbeMethod::analytic;
  std::size_t probe_samples = 10000;
  std::uint64_t seed = 0;
};

struct SelectedTerm {
  std::string term;
  std::size_t column = 0;
  double cos2 = 0.0;
  std::int64_t residual_dimension = 0;
  double probe_p = 1.0;       // P(probe beats this term at its iteration)
  double cumulative_p = 1.0;  // P(probe beats at least one term so far)
};

struct SelectionResult {
  /// All Q candidates in ranking order; only the first `cut_index` are kept.
  std::vector<SelectedTerm> ranked_terms;
  std::size_t cut_index = 0;
  double risk = 0.0;

  bool empty() const noexcept { return cut_index == 0; }
  std::vector<std::string> kept_terms() const;
};

/// 1 - prod_{k<=n} (1 - p_k) for every prefix n.
std::vector<double> cumulative_probe(std::span<const double> probe_p);

/// Largest n with cumulative[n-1] <= risk (0 if even the first exceeds it).
std::size_t probe_cut(std::span<const double> cumulative, double risk);

/// Gram-Schmidt ranking followed by the random-probe cut. Throws UsageError
/// when risk is not in (0, 1).
SelectionResult select_terms(const DesignMatrix& matrix, const SelectionOptions& options);

/// Tab-separated `rank term cos2 residual_dim probe_p cumulative_p`, after a
/// `# topic=.. risk=.. cut_index=..` header. Reals use 17 significant digits.
void write_selection(std::ostream& out, TopicId topic, const SelectionResult& result);
SelectionResult read_selection(std::istream& in, TopicId* topic = nullptr);

}  // namespace routefilter
