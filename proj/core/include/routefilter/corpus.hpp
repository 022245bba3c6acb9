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

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace routefilter {

using TermCounts = std::map<std::string, std::uint32_t, std::less<>>;

/// Lowercases ASCII, Latin-1, basic Greek and Cyrillic capitals. Input is
/// treated as UTF-8; invalid sequences are passed through unchanged.
std::string to_lower(std::string_view text);

/// Splits text into maximal runs of word characters, lowercased. Word
/// characters are ASCII alphanumerics and non-ASCII letters; punctuation,
/// symbols and whitespace separate tokens. No stemming, no stop words.
std::vector<std::string> tokenize(std::string_view text);

/// One judged or unjudged text. `length()` is the token count L.
class Document {
 public:
  Document() = default;

  static Document from_text(std::string doc_id, std::string raw_text);

  const std::string& id() const noexcept { return id_; }
  const std::string& raw_text() const noexcept { return raw_text_; }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  std::size_t length() const noexcept { return tokens_.size(); }
  const TermCounts& tf() const noexcept { return tf_; }

  /// Occurrences of `term` in this document, 0 when absent.
  std::uint32_t frequency(std::string_view term) const;

 private:
  std::string id_;
  std::string raw_text_;
  std::vector<std::string> tokens_;
  TermCounts tf_;
};

enum class DocumentFormat {
  automatic,  // sniff: a leading '<' selects trec
  trec,       // <DOC><DOCNO>..</DOCNO><TEXT>..</TEXT></DOC>
  lines,      // doc_id<TAB>text, one record per line
};

DocumentFormat parse_document_format(std::string_view name);

/// Parses a document stream. Throws ParseError naming the byte offset and
/// record index on malformed input, DuplicateKeyError on a repeated doc id.
std::vector<Document> read_documents(std::istream& in,
                                     DocumentFormat format = DocumentFormat::automatic);
std::vector<Document> read_documents_file(const std::string& path,
                                          DocumentFormat format = DocumentFormat::automatic);

/// Writes the line-record form. Tabs and line breaks inside the text are
/// replaced by spaces, which leaves the token stream unchanged.
void write_documents(std::ostream& out, std::span<const Document> docs);

/// Writes `<DOC>` records. Markup characters in the text are not escaped;
/// the caller provides plain text.
void write_trec_documents(std::ostream& out, std::span<const Document> docs);

/// Collection-wide term frequencies of a reference collection. Immutable
/// once built; safe to share between threads.
class CorpusStats {
 public:
  /// Total occurrences of `term` in the reference collection, 0 if unseen.
  std::uint64_t frequency(std::string_view term) const;
  bool contains(std::string_view term) const { return frequency(term) != 0; }

  std::uint64_t total_tokens() const noexcept { return total_tokens_; }
  std::uint64_t doc_count() const noexcept { return doc_count_; }
  std::size_t vocabulary_size() const noexcept { return counts_.size(); }

  /// Terms in lexicographic order with their counts.
  std::vector<std::pair<std::string, std::uint64_t>> sorted_entries() const;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;

 private:
  friend class CorpusStatsBuilder;

  std::unordered_map<std::string, std::uint64_t> counts_;
  std::uint64_t total_tokens_ = 0;
  std::uint64_t doc_count_ = 0;
};

/// Accumulates term counts; partial builders can be merged, so a parallel
/// reduction over shards gives the same result as a sequential pass.
class CorpusStatsBuilder {
 public:
  void add(const Document& doc);
  void merge(const CorpusStatsBuilder& other);

  /// Throws DataError if no document (or no token) was added.
  CorpusStats build() const;

 private:
  CorpusStats stats_;
};

CorpusStats compute_corpus_stats(std::span<const Document> docs);
CorpusStats compute_corpus_stats(std::span<const Document* const> docs);

void write_corpus_stats(std::ostream& out, const CorpusStats& stats);

/// Terms excluded from topic candidate lists.
class StopList {
 public:
  StopList() = default;
  StopList(std::initializer_list<std::string_view> terms);

  /// One term per line; `#` starts a comment; blank lines are ignored.
  static StopList parse(std::istream& in);
  static StopList load(const std::string& path);

  bool contains(std::string_view term) const;
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  void insert(std::string_view term);

 private:
  std::set<std::string, std::less<>> terms_;
};

}  // namespace routefilter
