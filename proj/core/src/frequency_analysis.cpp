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

#include "routefilter/frequency_analysis.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "routefilter/error.hpp"

namespace routefilter {
namespace {

struct TermRatio {
  std::string_view term;
  std::uint64_t tf;
  std::uint64_t corpus_tf;
};

// a.tf / a.corpus_tf > b.tf / b.corpus_tf, compared by cross-multiplication
// (exact while every count fits in 32 bits).
bool more_specific(const TermRatio& a, const TermRatio& b) {
  constexpr std::uint64_t kExact = std::uint64_t{1} << 32;
  if (a.tf < kExact && b.tf < kExact && a.corpus_tf < kExact && b.corpus_tf < kExact) {
    const std::uint64_t lhs = a.tf * b.corpus_tf;
    const std::uint64_t rhs = b.tf * a.corpus_tf;
    if (lhs != rhs) return lhs > rhs;
  } else {
    const long double lhs = static_cast<long double>(a.tf) * b.corpus_tf;
    const long double rhs = static_cast<long double>(b.tf) * a.corpus_tf;
    if (lhs != rhs) return lhs > rhs;
  }
  return a.term < b.term;
}

}  // namespace

std::vector<std::string> specific_half(const Document& doc, const CorpusStats& stats) {
  std::vector<TermRatio> ratios;
  ratios.reserve(doc.tf().size());
  for (const auto& [term, count] : doc.tf()) {
    const std::uint64_t corpus_tf = std::max<std::uint64_t>(stats.frequency(term), 1);
    ratios.push_back({term, count, corpus_tf});
  }
  std::sort(ratios.begin(), ratios.end(), more_specific);
  const std::size_t keep = (ratios.size() + 1) / 2;
  std::vector<std::string> kept;
  kept.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) kept.emplace_back(ratios[i].term);
  return kept;
}

CandidateList rank_specific_terms(std::span<const Document* const> relevant,
                                  const CorpusStats& stats, const StopList& stop,
                                  const SpecificTermOptions& options) {
  if (relevant.empty()) {
    throw DataError("term frequency analysis needs at least one relevant document");
  }
  std::map<std::string, std::size_t, std::less<>> support;
  for (const Document* doc : relevant) {
    for (auto& term : specific_half(*doc, stats)) ++support[std::move(term)];
  }

  CandidateList candidates;
  for (const auto& [term, count] : support) {
    if (count < options.min_support || stop.contains(term)) continue;
    candidates.push_back({term, count});
  }
  // Map order is lexicographic, so a stable sort on support alone keeps the
  // ascending-term tie order.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.support > b.support; });
  if (options.max_candidates != 0 && candidates.size() > options.max_candidates) {
    candidates.resize(options.max_candidates);
  }
  if (candidates.empty()) {
    throw EmptyCandidatesError(
        "no candidate term left after the stop list and support filters");
  }
  return candidates;
}

void write_candidates(std::ostream& out, const CandidateList& candidates) {
  out << "# term\tsupport\n";
  for (const auto& c : candidates) out << c.term << '\t' << c.support << '\n';
}

}  // namespace routefilter
