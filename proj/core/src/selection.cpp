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

#include "routefilter/selection.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "routefilter/error.hpp"
#include "routefilter/gram_schmidt.hpp"
#include "routefilter/probe.hpp"

namespace routefilter {

ProbeMethod parse_probe_method(std::string_view name) {
  if (name == "analytic") return ProbeMethod::analytic;
  if (name == "monte_carlo" || name == "monte-carlo" || name == "mc") {
    return ProbeMethod::monte_carlo;
  }
  throw UsageError(fmt::format("unknown probe method '{}'", name));
}

std::vector<std::string> SelectionResult::kept_terms() const {
  std::vector<std::string> terms;
  terms.reserve(cut_index);
  for (std::size_t i = 0; i < cut_index; ++i) terms.push_back(ranked_terms[i].term);
  return terms;
}

std::vector<double> cumulative_probe(std::span<const double> probe_p) {
  std::vector<double> cumulative;
  cumulative.reserve(probe_p.size());
  double survive = 1.0;
  for (const double p : probe_p) {
    survive *= 1.0 - p;
    cumulative.push_back(1.0 - survive);
  }
  return cumulative;
}

std::size_t probe_cut(std::span<const double> cumulative, double risk) {
  std::size_t cut = 0;
  for (std::size_t n = 0; n < cumulative.size(); ++n) {
    if (cumulative[n] <= risk) cut = n + 1;
  }
  return cut;
}

SelectionResult select_terms(const DesignMatrix& matrix, const SelectionOptions& options) {
  if (!(options.risk > 0.0 && options.risk < 1.0)) {
    throw UsageError(fmt::format("risk must lie in (0, 1), got {}", options.risk));
  }
  const auto ranking =
      gram_schmidt_rank(matrix, OrthogonalRankingOptions{.intercept = options.intercept});

  std::optional<MonteCarloProbe> sampler;
  if (options.probe == ProbeMethod::monte_carlo) sampler.emplace(options.probe_samples, options.seed);

  std::vector<double> probe_p;
  probe_p.reserve(ranking.size());
  for (const auto& entry : ranking) {
    // A residual space of dimension < 2 lets a probe fit any output.
    double p = 1.0;
    if (!entry.exhausted && entry.residual_dimension >= 2) {
      p = sampler ? sampler->exceedance(entry.cos2, entry.residual_dimension)
                  : probe_exceedance(entry.cos2, entry.residual_dimension);
    }
    probe_p.push_back(p);
  }
  const auto cumulative = cumulative_probe(probe_p);

  SelectionResult result;
  result.risk = options.risk;
  result.ranked_terms.reserve(ranking.size());
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const auto& entry = ranking[i];
    result.ranked_terms.push_back({matrix.term(entry.column), entry.column, entry.cos2,
                                   entry.residual_dimension, probe_p[i], cumulative[i]});
  }
  result.cut_index = probe_cut(cumulative, options.risk);
  if (options.min_terms != 0 && result.cut_index < options.min_terms) {
    result.cut_index = std::min(options.min_terms, ranking.size());
  }
  if (options.max_terms != 0 && result.cut_index > options.max_terms) {
    result.cut_index = options.max_terms;
  }
  return result;
}

void write_selection(std::ostream& out, TopicId topic, const SelectionResult& result) {
  out << fmt::format("# topic={} risk={:.17g} cut_index={}\n", topic, result.risk,
                     result.cut_index);
  for (std::size_t i = 0; i < result.ranked_terms.size(); ++i) {
    const auto& t = result.ranked_terms[i];
    out << fmt::format("{}\t{}\t{:.17g}\t{}\t{:.17g}\t{:.17g}\n", i + 1, t.term, t.cos2,
                       t.residual_dimension, t.probe_p, t.cumulative_p);
  }
}

SelectionResult read_selection(std::istream& in, TopicId* topic) {
  SelectionResult result;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      int parsed_topic = 0;
      double risk = 0.0;
      std::size_t cut = 0;
      if (std::sscanf(line.c_str(), "# topic=%d risk=%lf cut_index=%zu", &parsed_topic, &risk,
                      &cut) != 3) {
        throw ParseError(fmt::format("selection line {}: bad header", line_no), line_no, 0);
      }
      if (topic != nullptr) *topic = parsed_topic;
      result.risk = risk;
      result.cut_index = cut;
      header = true;
      continue;
    }
    std::istringstream fields(line);
    std::size_t rank = 0;
    SelectedTerm term;
    std::string cos2_text, p_text, cum_text;
    if (!(fields >> rank >> term.term >> cos2_text >> term.residual_dimension >> p_text >>
          cum_text)) {
      throw ParseError(fmt::format("selection line {}: expected 6 fields", line_no), line_no,
                       result.ranked_terms.size());
    }
    if (rank != result.ranked_terms.size() + 1) {
      throw ParseError(fmt::format("selection line {}: rank {} out of sequence", line_no, rank),
                       line_no, result.ranked_terms.size());
    }
    term.column = rank - 1;
    term.cos2 = std::stod(cos2_text);
    term.probe_p = std::stod(p_text);
    term.cumulative_p = std::stod(cum_text);
    result.ranked_terms.push_back(std::move(term));
  }
  if (!header) throw ParseError("selection file has no header line", 1, 0);
  if (result.cut_index > result.ranked_terms.size()) {
    throw DataError(fmt::format("cut_index {} exceeds the {} ranked terms", result.cut_index,
                                result.ranked_terms.size()));
  }
  return result;
}

}  // namespace routefilter
