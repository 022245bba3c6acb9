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

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <doctest.h>

#include "routefilter/corpus.hpp"
#include "routefilter/error.hpp"
#include "routefilter/qrels.hpp"

using namespace routefilter;
using Tokens = std::vector<std::string>;

namespace {

std::vector<Document> parse(const std::string& text,
                            DocumentFormat format = DocumentFormat::automatic) {
  std::istringstream in(text);
  return read_documents(in, format);
}

// Random text over ASCII letters, digits, punctuation and a few multi-byte
// letters and separators.
std::string random_text(std::mt19937_64& rng, std::size_t length) {
  static const std::vector<std::string> alphabet = {
      "a", "B", "z", "Q", "0", "7", " ", "-", "'", ",", "\n", "\t",
      "\xC3\x89",      // E acute
      "\xC3\xA9",      // e acute
      "\xC3\x9F",      // sharp s
      "\xCE\x94",      // Greek capital delta
      "\xD0\x96",      // Cyrillic capital zhe
      "\xE2\x80\x94",  // dash punctuation
      "\xC2\xA0",      // no-break space
  };
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s;
  for (std::size_t i = 0; i < length; ++i) s += alphabet[pick(rng)];
  return s;
}

}  // namespace

TEST_CASE("tokenize splits on non-alphanumerics and lowercases") {
  CHECK(tokenize("Falkland Islands") == Tokens{"falkland", "islands"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("Eurotunnel's rail-link") == Tokens{"eurotunnel", "s", "rail", "link"});
  CHECK(tokenize("  F-16s, 1993!") == Tokens{"f", "16s", "1993"});
  CHECK(tokenize("...").empty());
}

TEST_CASE("tokenize handles UTF-8 letters and separators") {
  CHECK(tokenize("\xC3\x89T\xC3\x89 caf\xC3\xA9") == Tokens{"\xC3\xA9t\xC3\xA9", "caf\xC3\xA9"});
  CHECK(tokenize("\xCE\x94\xCE\x95\xCE\x9B\xCE\xA4\xCE\x91") ==
        Tokens{"\xCE\xB4\xCE\xB5\xCE\xBB\xCF\x84\xCE\xB1"});
  CHECK(tokenize("\xD0\x9C\xD0\x98\xD0\xA0") == Tokens{"\xD0\xBC\xD0\xB8\xD1\x80"});
  CHECK(tokenize("left\xE2\x80\x94right") == Tokens{"left", "right"});
  CHECK(tokenize("a\xC2\xA0" "b") == Tokens{"a", "b"});
  CHECK(tokenize("bad\xFF" "byte") == Tokens{"bad", "byte"});
}

TEST_CASE("tokenize is invariant under lowercasing") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string s = random_text(rng, 1 + trial % 60);
    CHECK(tokenize(to_lower(s)) == tokenize(s));
  }
}

TEST_CASE("document length equals the sum of term frequencies") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto doc = Document::from_text("d", random_text(rng, trial % 80));
    std::size_t total = 0;
    for (const auto& [term, count] : doc.tf()) {
      CHECK(count >= 1);
      CHECK(to_lower(term) == term);
      total += count;
    }
    CHECK(total == doc.length());
    CHECK(doc.length() == doc.tokens().size());
  }
}

TEST_CASE("document with no tokens") {
  const auto doc = Document::from_text("empty", " -- ");
  CHECK(doc.length() == 0);
  CHECK(doc.tf().empty());
  CHECK(doc.frequency("x") == 0);
}

TEST_CASE("TREC records") {
  const auto docs = parse(
      "<DOC>\n<DOCNO> FT921-1 </DOCNO>\n<HEADLINE>ignored</HEADLINE>\n"
      "<TEXT>Oil <P>price</P> rises</TEXT>\n</DOC>\n"
      "<DOC><DOCNO>FT921-2</DOCNO><TEXT>a</TEXT><TEXT>b</TEXT></DOC>\n");
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].id() == "FT921-1");
  CHECK(docs[0].tokens() == Tokens{"oil", "price", "rises"});
  CHECK(docs[1].tokens() == Tokens{"a", "b"});
}

TEST_CASE("TREC record without text is empty") {
  const auto docs = parse("<DOC><DOCNO>X</DOCNO></DOC>", DocumentFormat::trec);
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].length() == 0);
}

TEST_CASE("malformed TREC input names the byte offset and record") {
  const std::string good = "<DOC><DOCNO>A</DOCNO><TEXT>x</TEXT></DOC>\n";
  try {
    parse(good + "<DOC><TEXT>no id</TEXT></DOC>");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.record() == 1);
    CHECK(e.position() == good.size());
  }
  CHECK_THROWS_AS(parse(good + "<DOC><DOCNO>B</DOCNO>"), ParseError);
  CHECK_THROWS_AS(parse(good + "junk", DocumentFormat::trec), ParseError);
  CHECK_THROWS_AS(parse("<DOC><DOCNO>C</DOCNO><TEXT>open</DOC>"), ParseError);
  CHECK_THROWS_AS(parse("<DOC><DOCNO> </DOCNO></DOC>"), ParseError);
}

TEST_CASE("duplicate doc ids are rejected") {
  CHECK_THROWS_AS(parse("<DOC><DOCNO>A</DOCNO></DOC><DOC><DOCNO>A</DOCNO></DOC>"),
                  DuplicateKeyError);
  CHECK_THROWS_AS(parse("a\tone\na\ttwo\n"), DuplicateKeyError);
}

TEST_CASE("line records") {
  const auto docs = parse("d1\tthe first\n\nd2\tsecond\ttab\r\n");
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].tokens() == Tokens{"the", "first"});
  CHECK(docs[1].tokens() == Tokens{"second", "tab"});
  try {
    parse("d1\tok\nbroken line\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.record() == 1);
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(parse("\tno id\n"), ParseError);
}

TEST_CASE("document format names") {
  CHECK(parse_document_format("trec") == DocumentFormat::trec);
  CHECK(parse_document_format("lines") == DocumentFormat::lines);
  CHECK(parse_document_format("auto") == DocumentFormat::automatic);
  CHECK_THROWS_AS(parse_document_format("xml"), UsageError);
  CHECK_THROWS_AS(read_documents_file("/nonexistent/file"), DataError);
}

TEST_CASE("serialized collections read back with identical tf tables") {
  std::mt19937_64 rng(13);
  std::vector<Document> docs;
  for (int i = 0; i < 40; ++i) {
    docs.push_back(Document::from_text("doc-" + std::to_string(i), random_text(rng, 50)));
  }
  for (const bool trec : {false, true}) {
    std::ostringstream out;
    if (trec) {
      write_trec_documents(out, docs);
    } else {
      write_documents(out, docs);
    }
    const auto back = parse(out.str());
    REQUIRE(back.size() == docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
      CHECK(back[i].id() == docs[i].id());
      CHECK(back[i].tf() == docs[i].tf());
      CHECK(back[i].tokens() == docs[i].tokens());
    }
  }
}

TEST_CASE("corpus statistics") {
  const std::vector<Document> docs = {Document::from_text("d1", "a a b"),
                                      Document::from_text("d2", "b c")};
  const auto stats = compute_corpus_stats(docs);
  CHECK(stats.frequency("a") == 2);
  CHECK(stats.frequency("b") == 2);
  CHECK(stats.frequency("c") == 1);
  CHECK(stats.frequency("z") == 0);
  CHECK(stats.total_tokens() == 5);
  CHECK(stats.doc_count() == 2);
  CHECK(stats.vocabulary_size() == 3);

  const std::vector<Document> one = {Document::from_text("d", "word")};
  const auto single = compute_corpus_stats(one);
  CHECK(single.sorted_entries() ==
        std::vector<std::pair<std::string, std::uint64_t>>{{"word", 1}});

  CHECK_THROWS_AS(compute_corpus_stats(std::span<const Document>{}), DataError);
  const std::vector<Document> blank = {Document::from_text("d", "")};
  CHECK_THROWS_AS(compute_corpus_stats(blank), DataError);
}

TEST_CASE("corpus statistics do not depend on document order or sharding") {
  std::mt19937_64 rng(14);
  std::vector<Document> docs;
  for (int i = 0; i < 60; ++i) {
    docs.push_back(Document::from_text(std::to_string(i), random_text(rng, 40) + " x"));
  }
  const auto reference = compute_corpus_stats(docs);
  std::uint64_t sum = 0;
  for (const auto& [term, count] : reference.sorted_entries()) {
    CHECK(count >= 1);
    sum += count;
  }
  CHECK(sum == reference.total_tokens());

  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(docs.begin(), docs.end(), rng);
    CHECK(compute_corpus_stats(docs) == reference);

    CorpusStatsBuilder left, right;
    const std::size_t split = static_cast<std::size_t>(trial) % docs.size();
    for (std::size_t i = 0; i < docs.size(); ++i) (i < split ? left : right).add(docs[i]);
    left.merge(right);
    CHECK(left.build() == reference);
  }
}

TEST_CASE("stop list") {
  std::istringstream in("# header\nCalifornia\n\n  los  \nangeles # trailing\n");
  const auto stop = StopList::parse(in);
  CHECK(stop.size() == 3);
  CHECK(stop.contains("california"));
  CHECK(stop.contains("CALIFORNIA"));
  CHECK(stop.contains("los"));
  CHECK(stop.contains("angeles"));
  CHECK_FALSE(stop.contains("san"));
  const StopList listed{"The", "a"};
  CHECK(listed.contains("the"));
  CHECK(StopList{}.empty());
  CHECK_THROWS_AS(StopList::load("/nonexistent/stop"), DataError);
}

TEST_CASE("qrels labels") {
  std::istringstream in("351 0 FT921-100 1\n351 0 FT921-101 0\n352 0 FT921-100 2\n\n");
  const auto qrels = Qrels::parse(in);
  CHECK(qrels.size() == 3);
  CHECK(qrels.label(351, "FT921-100") == Relevance::relevant);
  CHECK(qrels.label(351, "FT921-101") == Relevance::judged_irrelevant);
  CHECK(qrels.label(351, "FT921-999") == Relevance::unjudged);
  CHECK(qrels.label(360, "FT921-100") == Relevance::unjudged);
  CHECK(qrels.label(352, "FT921-100") == Relevance::relevant);
  CHECK(qrels.topics() == std::vector<TopicId>{351, 352});
  CHECK(qrels.relevant(351) == std::vector<std::string>{"FT921-100"});
  CHECK(qrels.judged_irrelevant(351) == std::vector<std::string>{"FT921-101"});
  CHECK(qrels.relevant(999).empty());

  std::istringstream single("351 0 FT921-100 1\n");
  CHECK(parse_qrels(single) ==
        std::vector<Judgment>{{351, "FT921-100", Relevance::relevant}});
}

TEST_CASE("malformed qrels cite the line") {
  std::istringstream in("351 0 FT921-100 1\n351 0 X\n");
  try {
    Qrels::parse(in);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream bad_grade("351 0 A one\n");
  CHECK_THROWS_AS(Qrels::parse(bad_grade), ParseError);
  std::istringstream bad_topic("x 0 A 1\n");
  CHECK_THROWS_AS(Qrels::parse(bad_topic), ParseError);
  std::istringstream extra("351 0 A 1 extra\n");
  CHECK_THROWS_AS(Qrels::parse(extra), ParseError);
  std::istringstream dup("351 0 A 1\n351 0 A 0\n");
  CHECK_THROWS_AS(Qrels::parse(dup), DuplicateKeyError);
}

TEST_CASE("qrels round trip") {
  const std::vector<Judgment> judgments = {{7, "b", Relevance::judged_irrelevant},
                                           {7, "a", Relevance::relevant}};
  std::ostringstream out;
  write_qrels(out, judgments);
  CHECK(out.str() == "7 0 b 0\n7 0 a 1\n");
  std::istringstream in(out.str());
  CHECK(parse_qrels(in) == judgments);
}
