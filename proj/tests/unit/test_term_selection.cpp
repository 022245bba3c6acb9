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
#include <cmath>
#include <random>
#include <sstream>

#include <doctest.h>

#include "oracles.hpp"
#include "routefilter/design_matrix.hpp"
#include "routefilter/error.hpp"
#include "routefilter/frequency_analysis.hpp"
#include "routefilter/gram_schmidt.hpp"
#include "routefilter/probe.hpp"
#include "routefilter/selection.hpp"

using namespace routefilter;
using doctest::Approx;

namespace {

std::string repeat(const std::string& word, int times) {
  std::string s;
  for (int i = 0; i < times; ++i) s += word + " ";
  return s;
}

CorpusStats stats_from(std::initializer_list<std::string> texts) {
  std::vector<Document> docs;
  for (const auto& t : texts) docs.push_back(Document::from_text(std::to_string(docs.size()), t));
  return compute_corpus_stats(docs);
}

std::vector<const Document*> pointers(const std::vector<Document>& docs) {
  std::vector<const Document*> out;
  for (const auto& d : docs) out.push_back(&d);
  return out;
}

DesignMatrix three_by_three() {
  return DesignMatrix({{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}, {1, 1, -1}, {"x1", "x2", "x3"});
}

std::vector<std::size_t> indices(const std::vector<RankedColumn>& ranking) {
  std::vector<std::size_t> out;
  for (const auto& r : ranking) out.push_back(r.column);
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("frequency analysis keeps the specific half of each document") {
  const auto stats = stats_from({repeat("oil", 10) + repeat("falkland", 2) + repeat("the", 1000)});
  const std::vector<Document> relevant = {
      Document::from_text("r1", "oil oil falkland the the the the")};
  const auto half = specific_half(relevant[0], stats);
  CHECK(half == std::vector<std::string>{"falkland", "oil"});

  const auto ptrs = pointers(relevant);
  const auto list = rank_specific_terms(ptrs, stats, {}, {.min_support = 1});
  CHECK(list == CandidateList{{"falkland", 1}, {"oil", 1}});
}

TEST_CASE("support counts merge across documents") {
  const auto stats = stats_from({"fusion fusion fuel " + repeat("common", 50) + repeat("other", 50)});
  const std::vector<Document> relevant = {Document::from_text("r1", "fusion fuel common"),
                                          Document::from_text("r2", "fusion other")};
  const auto ptrs = pointers(relevant);
  CHECK(rank_specific_terms(ptrs, stats, {}, {.min_support = 2}) == CandidateList{{"fusion", 2}});
  CHECK(rank_specific_terms(ptrs, stats, {}, {.min_support = 1}) ==
        CandidateList{{"fusion", 2}, {"fuel", 1}});
  CHECK(rank_specific_terms(ptrs, stats, {}, {.min_support = 1, .max_candidates = 1}) ==
        CandidateList{{"fusion", 2}});
}

TEST_CASE("frequency analysis error cases") {
  const auto stats = stats_from({"alpha beta gamma"});
  const std::vector<Document> relevant = {Document::from_text("r", "alpha beta")};
  const auto ptrs = pointers(relevant);
  CHECK_THROWS_AS(rank_specific_terms(ptrs, stats, StopList{"alpha", "beta"}, {.min_support = 1}),
                  EmptyCandidatesError);
  CHECK_THROWS_AS(rank_specific_terms(ptrs, stats, {}, {.min_support = 2}), EmptyCandidatesError);
  CHECK_THROWS_AS(rank_specific_terms({}, stats, {}, {}), DataError);
}

TEST_CASE("terms missing from the reference statistics count as corpus_tf 1") {
  const auto stats = stats_from({repeat("known", 5)});
  const Document doc = Document::from_text("r", "known known unseen");
  // known: 2/5, unseen: 1/1 -> unseen first.
  CHECK(specific_half(doc, stats) == std::vector<std::string>{"unseen"});
}

TEST_CASE("candidate lists are ordered, unique and stop-list free") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> word(0, 39), len(1, 30);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Document> all;
    for (int d = 0; d < 30; ++d) {
      std::string text;
      const int n = len(rng);
      for (int i = 0; i < n; ++i) text += "t" + std::to_string(word(rng)) + " ";
      all.push_back(Document::from_text(std::to_string(d), text));
    }
    const auto stats = compute_corpus_stats(all);
    const std::vector<Document> relevant(all.begin(), all.begin() + 10);
    const auto ptrs = pointers(relevant);
    const StopList stop{"t0", "t1", "t2", "t3"};
    CandidateList list;
    try {
      list = rank_specific_terms(ptrs, stats, stop, {.min_support = 1});
    } catch (const EmptyCandidatesError&) {
      continue;
    }
    CHECK(list == rank_specific_terms(ptrs, stats, stop, {.min_support = 1}));
    for (std::size_t i = 0; i < list.size(); ++i) {
      CHECK_FALSE(stop.contains(list[i].term));
      CHECK(list[i].support >= 1);
      if (i > 0) {
        CHECK(list[i - 1].support >= list[i].support);
        if (list[i - 1].support == list[i].support) CHECK(list[i - 1].term < list[i].term);
      }
    }
  }
}

TEST_CASE("design matrix holds raw term frequencies") {
  const std::vector<Document> docs = {Document::from_text("a", "a a b"),
                                      Document::from_text("b", "b")};
  const std::vector<LabeledDocument> training = {{&docs[0], 1}, {&docs[1], -1}};
  const auto m = build_design_matrix(training, {{"a", 1}, {"b", 1}, {"zzz", 1}});
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m.at(0, 0) == 2);
  CHECK(m.at(0, 1) == 1);
  CHECK(m.at(1, 0) == 0);
  CHECK(m.at(1, 1) == 1);
  CHECK(m.at(0, 2) == 0);
  CHECK(m.at(1, 2) == 0);
  CHECK(std::vector<double>(m.target().begin(), m.target().end()) == std::vector<double>{1, -1});
  CHECK(m.term(1) == "b");

  const std::vector<LabeledDocument> positive = {{&docs[0], 1}, {&docs[1], 1}};
  CHECK_THROWS_AS(build_design_matrix(positive, {{"a", 1}}), DataError);
  CHECK_THROWS_AS(build_design_matrix(training, {}), DataError);
}

TEST_CASE("design matrix validation") {
  CHECK_THROWS_AS(DesignMatrix({{1}}, {1}), DataError);
  CHECK_THROWS_AS(DesignMatrix({{1, 2}}, {1, 0.5}), DataError);
  CHECK_THROWS_AS(DesignMatrix({{1, -2}}, {1, -1}), DataError);
  CHECK_THROWS_AS(DesignMatrix({{1, NAN}}, {1, -1}), DataError);
  CHECK_THROWS_AS(DesignMatrix({{1, 2, 3}}, {1, -1}), DataError);
  CHECK_THROWS_AS(DesignMatrix({}, {1, -1}), DataError);
  CHECK(DesignMatrix({{1, 2}}, {1, -1}).term(0) == "x0");
}

TEST_CASE("cos2 of simple vectors") {
  const std::vector<double> a{2, 2}, b{1, 1}, e1{1, 0}, e2{0, 1}, zero{0, 0};
  CHECK(cos2(a, b).value() == Approx(1.0));
  CHECK(cos2(e1, e2).value() == 0.0);
  CHECK(cos2(e1, b).value() == Approx(0.5));
  CHECK_FALSE(cos2(zero, b).has_value());
  CHECK_FALSE(cos2(b, e1, 5.0).has_value());
  CHECK_THROWS(cos2(std::vector<double>{1, 2, 3}, b));
}

TEST_CASE("cos2 is symmetric, bounded and scale invariant") {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> x(7), y(7);
    for (auto& v : x) v = normal(rng);
    for (auto& v : y) v = normal(rng);
    const double c = cos2(x, y).value();
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    CHECK(cos2(y, x).value() == Approx(c).epsilon(1e-12));
    const double s = scale(rng);
    for (auto& v : x) v *= -s;
    CHECK(cos2(x, y).value() == Approx(c).epsilon(1e-12));
  }
}

TEST_CASE("Gram-Schmidt ranks the three-column example") {
  const auto ranking = gram_schmidt_rank(three_by_three());
  REQUIRE(ranking.size() == 3);
  CHECK(indices(ranking) == std::vector<std::size_t>{1, 2, 0});
  CHECK(ranking[0].cos2 == Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(ranking[1].cos2 == Approx(1.0).epsilon(1e-12));
  CHECK(ranking[2].cos2 == 0.0);
  CHECK(ranking[0].residual_dimension == 3);
  CHECK(ranking[1].residual_dimension == 2);
  CHECK(ranking[2].residual_dimension == 1);
  CHECK_FALSE(ranking[0].exhausted);
  CHECK(ranking[2].exhausted);

  OrthogonalRanker ranker(three_by_three());
  ranker.step();
  const auto y1 = ranker.residual_target();
  CHECK(y1[0] == Approx(0.0).epsilon(1e-12));
  CHECK(y1[1] == Approx(0.0).epsilon(1e-12));
  CHECK(y1[2] == Approx(-1.0));
  const auto x1 = ranker.residual_column(0);
  CHECK(x1[0] == Approx(0.5));
  CHECK(x1[1] == Approx(-0.5));
  CHECK(x1[2] == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("the three-column ranking is the unique greedy order") {
  const auto orders = testing::brute_force_greedy_orders(three_by_three());
  REQUIRE(orders.size() == 1);
  CHECK(orders[0] == indices(gram_schmidt_rank(three_by_three())));
}

TEST_CASE("a column equal to the output is ranked first") {
  const DesignMatrix m({{3, 1, 2, 0}, {1, 0, 1, 0}, {0, 1, 1, 1}}, {1, -1, 1, -1});
  // A nonnegative column is collinear with a +-1 output only once both are
  // centred, hence the intercept.
  const auto ranking = gram_schmidt_rank(m, {.intercept = true});
  CHECK(ranking[0].column == 1);
  CHECK(ranking[0].cos2 == Approx(1.0));
  CHECK(ranking[0].residual_dimension == 3);
}

TEST_CASE("an all-zero column is ranked last") {
  const DesignMatrix m({{0, 0, 0, 0}, {1, 2, 0, 1}, {2, 0, 1, 1}}, {1, 1, -1, -1});
  const auto ranking = gram_schmidt_rank(m);
  CHECK(ranking.back().column == 0);
  CHECK(ranking.back().cos2 == 0.0);
  CHECK(ranking.back().exhausted);
}

TEST_CASE("linearly dependent columns are appended in original order") {
  const DesignMatrix m({{1, 0, 1, 0}, {2, 0, 2, 0}, {0, 1, 0, 1}, {1, 2, 3, 4}},
                       {1, -1, 1, -1});
  const auto ranking = gram_schmidt_rank(m);
  REQUIRE(ranking.size() == 4);
  // Columns 0, 1 and 2 tie at 0.5; column 0 wins, column 1 collapses, and
  // column 2 then explains the output, so 1 and 3 follow in original order.
  CHECK(indices(ranking) == std::vector<std::size_t>{0, 2, 1, 3});
  CHECK(ranking[0].cos2 == Approx(0.5));
  CHECK(ranking[1].cos2 == Approx(1.0));
  CHECK(ranking[2].exhausted);
  CHECK(ranking[3].exhausted);
  CHECK(ranking[3].cos2 == 0.0);
}

TEST_CASE("exact ties go to the lower index") {
  const DesignMatrix m({{1, 0, 1, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}}, {1, -1, 1, -1});
  const auto ranking = gram_schmidt_rank(m);
  CHECK(ranking[0].column == 0);
}

TEST_CASE("Gram-Schmidt agrees with the projection oracle") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = testing::random_design_matrix(rng, 4, 20, 2, 8);
    for (const bool intercept : {false, true}) {
      const auto ranking = gram_schmidt_rank(m, {.intercept = intercept});
      const auto oracle = testing::greedy_projection_oracle(m, intercept);
      REQUIRE(ranking.size() == oracle.size());
      for (std::size_t i = 0; i < ranking.size(); ++i) {
        CHECK(ranking[i].column == oracle[i].column);
        CHECK(std::abs(ranking[i].cos2 - oracle[i].cos2) <= 1e-9);
        CHECK(ranking[i].exhausted == oracle[i].exhausted);
        const auto base = static_cast<std::int64_t>(m.rows()) - (intercept ? 1 : 0);
        CHECK(ranking[i].residual_dimension == base - static_cast<std::int64_t>(i));
      }
    }
  }
}

TEST_CASE("residuals stay orthogonal to the selected directions") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = testing::random_design_matrix(rng, 4, 20, 2, 8);
    OrthogonalRanker ranker(m);
    while (!ranker.done()) {
      ranker.step();
      for (std::size_t i = 0; i < ranker.direction_count(); ++i) {
        const auto u = ranker.direction(i);
        const double nu = std::sqrt(dot(u, u));
        const auto r = ranker.residual_target();
        CHECK(std::abs(dot(u, r)) <= 1e-8 * nu * std::sqrt(dot(r, r)));
        for (std::size_t k = 0; k < m.cols(); ++k) {
          if (ranker.is_ranked(k)) continue;
          const auto v = ranker.residual_column(k);
          CHECK(std::abs(dot(u, v)) <= 1e-8 * nu * std::sqrt(dot(v, v)));
        }
      }
    }
  }
}

TEST_CASE("index sequence is unchanged by positive column scaling") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = testing::random_design_matrix(rng, 6, 20, 2, 6);
    std::vector<std::vector<double>> columns;
    for (std::size_t k = 0; k < m.cols(); ++k) {
      const double s = scale(rng);
      std::vector<double> c(m.column(k).begin(), m.column(k).end());
      for (auto& v : c) v *= s;
      columns.push_back(std::move(c));
    }
    const DesignMatrix scaled(columns, {m.target().begin(), m.target().end()});
    CHECK(indices(gram_schmidt_rank(m)) == indices(gram_schmidt_rank(scaled)));
  }
}

TEST_CASE("ranking every column reproduces the full least-squares fit") {
  std::mt19937_64 rng(26);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const auto m = testing::random_design_matrix(rng, 8, 20, 2, 6);
    OrthogonalRanker ranker(m);
    while (!ranker.done()) ranker.step();
    std::vector<std::size_t> all(m.cols());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    const double expected = testing::least_squares_residual_norm(m, all);
    const auto r = ranker.residual_target();
    CHECK(std::abs(std::sqrt(dot(r, r)) - expected) <= 1e-8);
    ++checked;
  }
  CHECK(checked == 80);
}

TEST_CASE("probe exceedance boundary values") {
  CHECK(probe_exceedance(0.0, 7) == 1.0);
  CHECK(probe_exceedance(0.5, 2) == Approx(0.5).epsilon(1e-12));
  for (const std::int64_t d : {3, 10, 100}) CHECK(probe_exceedance(1.0, d) == 0.0);
  CHECK_THROWS_AS(probe_exceedance(0.5, 1), DataError);
  CHECK_THROWS_AS(probe_exceedance(1.5, 5), DataError);
  CHECK_THROWS_AS(probe_exceedance(-0.1, 5), DataError);
  // d = 2: cos2 is arcsine distributed, P(c2 >= c) = 1 - (2/pi) asin(sqrt(c)).
  for (const double c : {0.1, 0.3, 0.7, 0.9}) {
    CHECK(probe_exceedance(c, 2) ==
          Approx(1.0 - 2.0 / M_PI * std::asin(std::sqrt(c))).epsilon(1e-12));
  }
  // d = 3: cos2 of a uniform direction on the sphere, P = 1 - sqrt(c).
  for (const double c : {0.1, 0.3, 0.7, 0.9}) {
    CHECK(probe_exceedance(c, 3) == Approx(1.0 - std::sqrt(c)).epsilon(1e-12));
  }
}

TEST_CASE("probe exceedance is monotone in c and d") {
  for (const std::int64_t d : {2, 3, 5, 10, 50, 200, 3000}) {
    double previous = 1.0;
    for (int i = 1; i <= 99; ++i) {
      const double p = probe_exceedance(i / 100.0, d);
      CHECK(p <= previous);
      previous = p;
    }
  }
  for (const double c : {0.01, 0.2, 0.5, 0.8}) {
    double previous = 1.0;
    for (const std::int64_t d : {2, 3, 4, 8, 16, 64, 256}) {
      const double p = probe_exceedance(c, d);
      CHECK(p < previous);
      previous = p;
    }
  }
}

TEST_CASE("probe exceedance matches explicit Gaussian probes") {
  const auto samples = testing::gaussian_probe_cos2(10, 100000, 27);
  const auto hits = std::count_if(samples.begin(), samples.end(), [](double v) { return v >= 0.5; });
  CHECK(std::abs(static_cast<double>(hits) / 1e5 - probe_exceedance(0.5, 10)) < 0.01);

  MonteCarloProbe mc(100000, 28);
  CHECK(std::abs(mc.exceedance(0.5, 10) - probe_exceedance(0.5, 10)) < 0.01);
  CHECK(std::abs(mc.exceedance(0.05, 30) - probe_exceedance(0.05, 30)) < 0.01);
  CHECK_THROWS_AS(MonteCarloProbe(0, 1), UsageError);
}

TEST_CASE("cumulative probe risk and cut") {
  const std::vector<double> p = {0.001, 0.002, 0.08, 0.0};
  const auto cumulative = cumulative_probe(p);
  CHECK(cumulative[0] == Approx(0.001));
  CHECK(cumulative[1] == Approx(0.003).epsilon(1e-3));
  CHECK(cumulative[2] == Approx(0.0828).epsilon(1e-3));
  CHECK(probe_cut(cumulative, 0.05) == 2);
  CHECK(probe_cut(cumulative, 0.0005) == 0);
  CHECK(probe_cut(cumulative, 0.5) == 4);
  for (std::size_t i = 1; i < cumulative.size(); ++i) CHECK(cumulative[i] >= cumulative[i - 1]);
}

TEST_CASE("perfect term costs nothing and is kept") {
  const DesignMatrix m({{1, 0, 1, 0, 1, 0}}, {1, -1, 1, -1, 1, -1}, {"perfect"});
  const auto result = select_terms(m, {.risk = 0.05, .intercept = true});
  REQUIRE(result.ranked_terms.size() == 1);
  CHECK(result.ranked_terms[0].cos2 == Approx(1.0));
  CHECK(result.ranked_terms[0].probe_p == 0.0);
  CHECK(result.cut_index == 1);
  CHECK(result.kept_terms() == std::vector<std::string>{"perfect"});
}

TEST_CASE("selection options") {
  std::mt19937_64 rng(29);
  const auto m = testing::random_design_matrix(rng, 20, 20, 8, 8);
  CHECK_THROWS_AS(select_terms(m, {.risk = 0.0}), UsageError);
  CHECK_THROWS_AS(select_terms(m, {.risk = 1.0}), UsageError);
  CHECK(select_terms(m, {.risk = 0.05, .min_terms = 5}).cut_index >= 5);
  CHECK(select_terms(m, {.risk = 0.999, .max_terms = 2}).cut_index <= 2);
  const auto a = select_terms(m, {.risk = 0.2, .probe = ProbeMethod::monte_carlo, .seed = 3});
  const auto b = select_terms(m, {.risk = 0.2, .probe = ProbeMethod::monte_carlo, .seed = 3});
  CHECK(a.cut_index == b.cut_index);
  for (std::size_t i = 0; i < a.ranked_terms.size(); ++i) {
    CHECK(a.ranked_terms[i].probe_p == b.ranked_terms[i].probe_p);
  }
  CHECK(parse_probe_method("analytic") == ProbeMethod::analytic);
  CHECK(parse_probe_method("monte-carlo") == ProbeMethod::monte_carlo);
  CHECK_THROWS_AS(parse_probe_method("magic"), UsageError);
}

TEST_CASE("tighter risk never keeps more terms") {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 40; ++trial) {
    const auto m = testing::random_design_matrix(rng, 10, 20, 2, 8, 3);
    std::size_t previous = m.cols();
    for (const double risk : {0.9, 0.5, 0.2, 0.05, 0.01, 0.001}) {
      const auto result = select_terms(m, {.risk = risk});
      CHECK(result.cut_index <= previous);
      previous = result.cut_index;
      for (std::size_t i = 0; i < result.ranked_terms.size(); ++i) {
        const auto& t = result.ranked_terms[i];
        CHECK(t.probe_p >= 0.0);
        CHECK(t.probe_p <= 1.0);
        if (i > 0) {
          CHECK(t.cumulative_p >= result.ranked_terms[i - 1].cumulative_p);
          CHECK(t.residual_dimension == result.ranked_terms[i - 1].residual_dimension - 1);
        }
      }
      if (result.cut_index > 0) {
        CHECK(result.ranked_terms[result.cut_index - 1].cumulative_p <= risk);
      }
      if (result.cut_index < result.ranked_terms.size()) {
        CHECK(result.ranked_terms[result.cut_index].cumulative_p > risk);
      }
    }
  }
}

TEST_CASE("selection files round trip") {
  std::mt19937_64 rng(31);
  const auto m = testing::random_design_matrix(rng, 15, 15, 5, 5);
  const auto result = select_terms(m, {.risk = 0.3});
  std::ostringstream out;
  write_selection(out, 412, result);
  CHECK(out.str().rfind("# topic=412 risk=", 0) == 0);
  std::istringstream in(out.str());
  TopicId topic = 0;
  const auto back = read_selection(in, &topic);
  CHECK(topic == 412);
  CHECK(back.cut_index == result.cut_index);
  CHECK(back.risk == result.risk);
  REQUIRE(back.ranked_terms.size() == result.ranked_terms.size());
  for (std::size_t i = 0; i < back.ranked_terms.size(); ++i) {
    CHECK(back.ranked_terms[i].term == result.ranked_terms[i].term);
    CHECK(back.ranked_terms[i].cos2 == result.ranked_terms[i].cos2);
    CHECK(back.ranked_terms[i].probe_p == result.ranked_terms[i].probe_p);
    CHECK(back.ranked_terms[i].cumulative_p == result.ranked_terms[i].cumulative_p);
    CHECK(back.ranked_terms[i].residual_dimension == result.ranked_terms[i].residual_dimension);
  }
  std::istringstream broken("# topic=1 risk=0.05 cut_index=1\n1\tterm\n");
  CHECK_THROWS_AS(read_selection(broken), DataError);
}
