// Copyright 2026 The metricvote Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include "metricvote/election.hpp"
#include "metricvote/rules.hpp"
#include "support.hpp"

using namespace metricvote;
using namespace metricvote::testing;

TEST_CASE("load_instance reads the two-voter instance") {
  auto e = two_disagreeing();
  CHECK(e.candidate_count() == 2);
  REQUIRE(e.block_count() == 2);
  CHECK(e.weight(0) == Rational(1, 2));
  CHECK(e.top(0) == 0);
  CHECK(e.top(1) == 1);
}

TEST_CASE("load_instance accepts a single voter and candidate") {
  auto e = load_instance("1 1\n1 0\n");
  CHECK(e.candidate_count() == 1);
  CHECK(e.weight(0) == 1);
}

TEST_CASE("load_instance rejects bad input") {
  CHECK_THROWS_AS(load_instance("2 1\n1 0 0\n"), ValidationError);
  CHECK_THROWS_AS(load_instance("2 1\n0 0 1\n"), ValidationError);
  CHECK_THROWS_AS(load_instance("2 1\n-1/2 0 1\n"), ValidationError);
  CHECK_THROWS_AS(load_instance("2 2\n1 0 1\n"), ParseError);
  CHECK_THROWS_AS(load_instance("2 1\n1 0 x\n"), ParseError);
  CHECK_THROWS_AS(load_instance(""), ParseError);
}

TEST_CASE("load_instance skips comments and normalizes rational weights") {
  auto e = load_instance("# header\n3 2\n\n1/3 0 1 2\n# middle\n2/3 2 1 0\n");
  CHECK(e.weight(0) == Rational(1, 3));
  CHECK(e.weight(1) == Rational(2, 3));
  auto again = load_instance(format_instance(e));
  CHECK(again.weight(1) == Rational(2, 3));
  CHECK(again.ballot(1).ranking == std::vector<Candidate>{2, 1, 0});
}

TEST_CASE("pairwise margins") {
  auto s = pairwise_margins(two_disagreeing());
  CHECK(s(0, 1) == Rational(1, 2));
  CHECK(s(1, 0) == Rational(1, 2));
  CHECK(s(0, 0) == 0);

  auto c = pairwise_margins(three_cycle());
  CHECK(c(0, 1) == Rational(2, 3));
  CHECK(c(1, 2) == Rational(2, 3));
  CHECK(c(2, 0) == Rational(2, 3));

  auto u = pairwise_margins(unanimous(4));
  for (int j = 1; j < 4; ++j) CHECK(u(0, j) == 1);

  auto half = pairwise_margins(three_cycle(), DiagonalMode::kHalf);
  CHECK(half(1, 1) == Rational(1, 2));
}

TEST_CASE("margins of complementary pairs sum to one") {
  for (const auto& e : small_corpus(50, 3)) {
    auto s = pairwise_margins(e);
    for (int i = 0; i < e.candidate_count(); ++i)
      for (int j = 0; j < e.candidate_count(); ++j) {
        if (i == j) continue;
        CHECK(s(i, j) + s(j, i) == 1);
        CHECK(s(i, j) >= 0);
      }
  }
}

TEST_CASE("plurality scores") {
  CHECK(plurality(two_disagreeing()).exact_probabilities() ==
        std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(plurality(unanimous()).exact_probabilities() ==
        std::vector<Rational>{Rational(1), Rational(0), Rational(0)});
  CHECK(plurality(three_voters()).exact_probabilities() ==
        std::vector<Rational>{Rational(2, 3), Rational(1, 3), Rational(0)});
  for (const auto& e : small_corpus(30, 4)) {
    Rational total;
    const auto plu = plurality(e);
    for (const auto& q : plu.exact_probabilities()) total += q;
    CHECK(total == 1);
  }
}

TEST_CASE("gen_random") {
  auto single = gen_random(1, 5, 11);
  for (const auto& b : single.ballots()) CHECK(b.ranking == std::vector<Candidate>{0});

  CHECK(format_instance(gen_random(3, 4, 7)) == format_instance(gen_random(3, 4, 7)));
  CHECK(format_instance(gen_random(3, 4, 7)) != format_instance(gen_random(3, 4, 8)));

  auto big = gen_random(4, 10000, 1);
  auto s = pairwise_margins(big);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(s(i, j).get_d() - 0.5) < 0.05);

  CHECK_THROWS_AS(gen_random(0, 3, 1), ValidationError);
}

TEST_CASE("gen_corpus draws sizes in range") {
  auto corpus = gen_corpus(40, 2, 5, 2, 6, 9);
  CHECK(corpus.size() == 40);
  for (const auto& e : corpus) {
    CHECK(e.candidate_count() >= 2);
    CHECK(e.candidate_count() <= 5);
    CHECK(e.block_count() >= 2);
    CHECK(e.block_count() <= 6);
  }
}

TEST_CASE("gen_radius_lb margins") {
  auto lb = gen_radius_lb(Rational(7, 10), 5);
  auto s = pairwise_margins(lb.election);
  CHECK(s(lb.k_star, lb.i_star) == Rational(7, 10));
  for (auto j : lb.u) CHECK(s(lb.i_star, j) == Rational(43, 50));

  auto uncovered = weighted_uncovered_set(lb.election, Threshold(Rational(7, 10)));
  std::vector<Candidate> expected = lb.u;
  expected.push_back(lb.k_star);
  std::sort(expected.begin(), expected.end());
  std::sort(uncovered.begin(), uncovered.end());
  CHECK(uncovered == expected);
}

TEST_CASE("gen_radius_lb closed forms on a grid") {
  for (int b = 55; b <= 95; b += 5) {
    Rational beta(b, 100);
    beta.canonicalize();
    for (int u = 2; u <= 10; ++u) {
      auto lb = gen_radius_lb(beta, u);
      auto s = pairwise_margins(lb.election);
      CHECK(s(lb.k_star, lb.i_star) == beta);
      for (auto j : lb.u) {
        CHECK(s(lb.i_star, j) == 1 - beta / u);
        CHECK(s(lb.k_star, j) == beta * (1 - Rational(1, u)));
      }
    }
  }
  CHECK_THROWS_AS(gen_radius_lb(Rational(1, 2), 5), ValidationError);
  CHECK_THROWS_AS(gen_radius_lb(Rational(7, 10), 1), ValidationError);
}

TEST_CASE("gen_rcb_lb margins") {
  auto lb = gen_rcb_lb(Rational(3, 5), 10);
  auto s = pairwise_margins(lb.election);
  REQUIRE(lb.tiers.size() == 11);
  for (auto c : lb.tiers[0]) CHECK(s(c, lb.i_star) == Rational(16, 25));
  for (std::size_t t = 0; t + 1 < lb.tiers.size(); ++t)
    for (auto hi : lb.tiers[t + 1])
      for (auto lo : lb.tiers[t]) CHECK(s(hi, lo) >= Rational(22, 25));
  CHECK_THROWS_AS(gen_rcb_lb(Rational(3, 5), 2), ValidationError);
}

TEST_CASE("unit voter expansion") {
  auto e = load_instance("2 2\n1/3 0 1\n2/3 1 0\n");
  auto u = expand_unit_voters(e);
  CHECK(u.voter_count() == 3);
  CHECK(std::count(u.block_of_voter.begin(), u.block_of_voter.end(), 1u) == 2);
  auto heavy = load_instance("2 2\n1 0 1\n1000000 1 0\n");
  CHECK_THROWS_AS(expand_unit_voters(heavy, 1000), ValidationError);
}

TEST_CASE("distribution helpers") {
  auto a = Distribution::point_mass(3, 1);
  auto b = Distribution::exact({Rational(1, 2), Rational(1, 2), Rational(0)});
  CHECK(a.total_variation(b) == doctest::Approx(0.5));
  auto mix = mixture(std::vector<Rational>{Rational(1, 2), Rational(1, 2)}, {a, b});
  REQUIRE(mix.is_exact());
  CHECK(mix.exact_probabilities()[1] == Rational(3, 4));
  CHECK(b.support() == std::vector<Candidate>{0, 1});
  CHECK(b.to_string() == "0: 1/2, 1: 1/2, 2: 0");
}
