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

#include "routefilter/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "routefilter/error.hpp"

namespace routefilter {
namespace {

struct CodePoint {
  char32_t value = 0;
  std::size_t width = 1;
  bool valid = false;
};

CodePoint decode_utf8(std::string_view text, std::size_t pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  if (lead < 0x80) return {lead, 1, true};
  std::size_t width = 0;
  char32_t value = 0;
  if ((lead & 0xE0) == 0xC0) {
    width = 2;
    value = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    width = 3;
    value = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    width = 4;
    value = lead & 0x07;
  } else {
    return {lead, 1, false};
  }
  if (pos + width > text.size()) return {lead, 1, false};
  for (std::size_t i = 1; i < width; ++i) {
    const auto cont = static_cast<unsigned char>(text[pos + i]);
    if ((cont & 0xC0) != 0x80) return {lead, 1, false};
    value = (value << 6) | (cont & 0x3F);
  }
  // Overlong encodings are rejected.
  if ((width == 2 && value < 0x80) || (width == 3 && value < 0x800) ||
      (width == 4 && value < 0x10000)) {
    return {lead, 1, false};
  }
  return {value, width, true};
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

char32_t lower_code_point(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;  // Greek
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;  // Cyrillic
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

bool is_word_code_point(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') ||
           (cp >= U'A' && cp <= U'Z');
  }
  if (cp < 0xC0) return false;                 // Latin-1 punctuation, NBSP
  if (cp == 0xD7 || cp == 0xF7) return false;  // multiplication, division
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  return true;
}

template <typename Sink>
void for_each_token(std::string_view text, Sink&& sink) {
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const CodePoint cp = decode_utf8(text, pos);
    if (cp.valid && is_word_code_point(cp.value)) {
      append_utf8(current, lower_code_point(cp.value));
    } else if (!current.empty()) {
      sink(std::move(current));
      current.clear();
    }
    pos += cp.width;
  }
  if (!current.empty()) sink(std::move(current));
}

std::string strip_markup(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_tag = false;
  for (const char ch : text) {
    if (in_tag) {
      if (ch == '>') in_tag = false;
    } else if (ch == '<') {
      in_tag = true;
      out.push_back(' ');
    } else {
      out.push_back(ch);
    }
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::size_t skip_space(std::string_view s, std::size_t pos) {
  while (pos < s.size() &&
         (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r')) {
    ++pos;
  }
  return pos;
}

class IdRegistry {
 public:
  void add(const std::string& id, std::size_t index) {
    if (!seen_.insert(id).second) {
      throw DuplicateKeyError(
          fmt::format("duplicate doc_id '{}' at record {}", id, index));
    }
  }

 private:
  std::unordered_set<std::string> seen_;
};

std::vector<Document> read_trec(std::string_view data) {
  static constexpr std::string_view kOpen = "<DOC>";
  static constexpr std::string_view kClose = "</DOC>";
  std::vector<Document> docs;
  IdRegistry ids;
  std::size_t pos = skip_space(data, 0);
  while (pos < data.size()) {
    const std::size_t index = docs.size();
    if (data.substr(pos, kOpen.size()) != kOpen) {
      throw ParseError(
          fmt::format("expected <DOC> at byte {} (record {})", pos, index), pos, index);
    }
    const std::size_t body_begin = pos + kOpen.size();
    const std::size_t body_end = data.find(kClose, body_begin);
    if (body_end == std::string_view::npos) {
      throw ParseError(
          fmt::format("unterminated <DOC> at byte {} (record {})", pos, index), pos,
          index);
    }
    const std::string_view body = data.substr(body_begin, body_end - body_begin);

    const std::size_t no_begin = body.find("<DOCNO>");
    const std::size_t no_end =
        no_begin == std::string_view::npos ? no_begin : body.find("</DOCNO>", no_begin);
    if (no_begin == std::string_view::npos || no_end == std::string_view::npos) {
      throw ParseError(
          fmt::format("missing <DOCNO> in record {} at byte {}", index, pos), pos, index);
    }
    const std::string_view doc_id = trim(body.substr(no_begin + 7, no_end - no_begin - 7));
    if (doc_id.empty()) {
      throw ParseError(fmt::format("empty <DOCNO> in record {} at byte {}", index, pos),
                       pos, index);
    }

    std::string text;
    std::size_t cursor = 0;
    while (true) {
      const std::size_t t_begin = body.find("<TEXT>", cursor);
      if (t_begin == std::string_view::npos) break;
      const std::size_t t_end = body.find("</TEXT>", t_begin);
      if (t_end == std::string_view::npos) {
        const std::size_t at = body_begin + t_begin;
        throw ParseError(
            fmt::format("unterminated <TEXT> in record {} at byte {}", index, at), at,
            index);
      }
      if (!text.empty()) text.push_back('\n');
      text += strip_markup(body.substr(t_begin + 6, t_end - t_begin - 6));
      cursor = t_end + 7;
    }

    std::string id(doc_id);
    ids.add(id, index);
    docs.push_back(Document::from_text(std::move(id), std::move(text)));
    pos = skip_space(data, body_end + kClose.size());
  }
  return docs;
}

std::vector<Document> read_lines(std::string_view data) {
  std::vector<Document> docs;
  IdRegistry ids;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t eol = data.find('\n', pos);
    if (eol == std::string_view::npos) eol = data.size();
    std::string_view line = data.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty()) {
      const std::size_t index = docs.size();
      const std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos) {
        throw ParseError(
            fmt::format("record {} at byte {} has no TAB separator", index, pos), pos,
            index);
      }
      const std::string_view doc_id = trim(line.substr(0, tab));
      if (doc_id.empty()) {
        throw ParseError(fmt::format("record {} at byte {} has an empty doc_id", index, pos),
                         pos, index);
      }
      std::string id(doc_id);
      ids.add(id, index);
      docs.push_back(Document::from_text(std::move(id), std::string(line.substr(tab + 1))));
    }
    pos = eol + 1;
  }
  return docs;
}

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const CodePoint cp = decode_utf8(text, pos);
    if (cp.valid) {
      append_utf8(out, lower_code_point(cp.value));
    } else {
      out.push_back(text[pos]);
    }
    pos += cp.width;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for_each_token(text, [&](std::string&& token) { tokens.push_back(std::move(token)); });
  return tokens;
}

Document Document::from_text(std::string doc_id, std::string raw_text) {
  Document doc;
  doc.id_ = std::move(doc_id);
  doc.raw_text_ = std::move(raw_text);
  doc.tokens_ = tokenize(doc.raw_text_);
  for (const auto& token : doc.tokens_) ++doc.tf_[token];
  return doc;
}

std::uint32_t Document::frequency(std::string_view term) const {
  const auto it = tf_.find(term);
  return it == tf_.end() ? 0 : it->second;
}

DocumentFormat parse_document_format(std::string_view name) {
  if (name == "auto" || name == "automatic") return DocumentFormat::automatic;
  if (name == "trec") return DocumentFormat::trec;
  if (name == "lines" || name == "tsv") return DocumentFormat::lines;
  throw UsageError(fmt::format("unknown document format '{}'", name));
}

std::vector<Document> read_documents(std::istream& in, DocumentFormat format) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (format == DocumentFormat::automatic) {
    const std::size_t first = skip_space(data, 0);
    format = (first < data.size() && data[first] == '<') ? DocumentFormat::trec
                                                         : DocumentFormat::lines;
  }
  return format == DocumentFormat::trec ? read_trec(data) : read_lines(data);
}

std::vector<Document> read_documents_file(const std::string& path, DocumentFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open document file '{}'", path));
  return read_documents(in, format);
}

void write_documents(std::ostream& out, std::span<const Document> docs) {
  for (const auto& doc : docs) {
    std::string text = doc.raw_text();
    std::replace_if(
        text.begin(), text.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; },
        ' ');
    out << doc.id() << '\t' << text << '\n';
  }
}

void write_trec_documents(std::ostream& out, std::span<const Document> docs) {
  for (const auto& doc : docs) {
    out << "<DOC>\n<DOCNO> " << doc.id() << " </DOCNO>\n<TEXT>\n" << doc.raw_text()
        << "\n</TEXT>\n</DOC>\n";
  }
}

std::uint64_t CorpusStats::frequency(std::string_view term) const {
  const auto it = counts_.find(std::string(term));
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::uint64_t>> CorpusStats::sorted_entries() const {
  std::vector<std::pair<std::string, std::uint64_t>> entries(counts_.begin(), counts_.end());
  std::sort(entries.begin(), entries.end());
  return entries;
}

void CorpusStatsBuilder::add(const Document& doc) {
  for (const auto& [term, count] : doc.tf()) stats_.counts_[term] += count;
  stats_.total_tokens_ += doc.length();
  ++stats_.doc_count_;
}

void CorpusStatsBuilder::merge(const CorpusStatsBuilder& other) {
  for (const auto& [term, count] : other.stats_.counts_) stats_.counts_[term] += count;
  stats_.total_tokens_ += other.stats_.total_tokens_;
  stats_.doc_count_ += other.stats_.doc_count_;
}

CorpusStats CorpusStatsBuilder::build() const {
  if (stats_.doc_count_ == 0) {
    throw DataError("cannot compute corpus statistics of an empty collection");
  }
  if (stats_.total_tokens_ == 0) {
    throw DataError("reference collection contains no tokens");
  }
  return stats_;
}

CorpusStats compute_corpus_stats(std::span<const Document> docs) {
  CorpusStatsBuilder builder;
  for (const auto& doc : docs) builder.add(doc);
  return builder.build();
}

CorpusStats compute_corpus_stats(std::span<const Document* const> docs) {
  CorpusStatsBuilder builder;
  for (const Document* doc : docs) builder.add(*doc);
  return builder.build();
}

void write_corpus_stats(std::ostream& out, const CorpusStats& stats) {
  out << "# doc_count=" << stats.doc_count() << " total_tokens=" << stats.total_tokens()
      << " vocabulary=" << stats.vocabulary_size() << '\n';
  for (const auto& [term, count] : stats.sorted_entries()) {
    out << term << '\t' << count << '\n';
  }
}

StopList::StopList(std::initializer_list<std::string_view> terms) {
  for (const auto term : terms) insert(term);
}

StopList StopList::parse(std::istream& in) {
  StopList list;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (!view.empty()) list.insert(view);
  }
  return list;
}

StopList StopList::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open stop list '{}'", path));
  return parse(in);
}

bool StopList::contains(std::string_view term) const {
  return terms_.find(to_lower(term)) != terms_.end();
}

void StopList::insert(std::string_view term) { terms_.insert(to_lower(term)); }

}  // namespace routefilter
