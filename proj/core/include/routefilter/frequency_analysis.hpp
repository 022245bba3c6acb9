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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "routefilter/corpus.hpp"

namespace routefilter {

/// A topic-specific term and the number of relevant documents that kept it.
struct Candidate {
  std::string term;
  std::size_t support = 0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Ordered by non-increasing support, ties by ascending term.
using CandidateList = std::vector<Candidate>;

struct SpecificTermOptions {
  std::size_t min_support = 2;
  std::size_t max_candidates = 150;  // 0 keeps every surviving term
};

/// Topic frequency analysis. Each relevant document ranks its distinct terms
/// by tf / corpus_tf (descending, ties by term) and keeps the top ceil(U/2)
/// of its U terms. The kept sets are merged into support counts; stop-list
/// terms and terms below `min_support` are dropped.
///
/// Terms missing from `stats` are treated as corpus_tf = 1.
///
/// Throws DataError on an empty relevant set and EmptyCandidatesError when
/// nothing survives the filters.
CandidateList rank_specific_terms(std::span<const Document* const> relevant,
                                  const CorpusStats& stats, const StopList& stop,
                                  const SpecificTermOptions& options = {});

/// The kept half of one document, in ratio order.
std::vector<std::string> specific_half(const Document& doc, const CorpusStats& stats);

void write_candidates(std::ostream& out, const CandidateList& candidates);

}  // namespace routefilter
