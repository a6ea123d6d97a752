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

#include <algorithm>
#include <random>

#include "metricvote/lp.hpp"
#include "metricvote/rules.hpp"
#include "support.hpp"

using namespace metricvote;
using namespace metricvote::testing;

namespace {

const Threshold kSixTenths(Rational(3, 5));

std::vector<Rational> exact(const Distribution& d) { return d.exact_probabilities(); }

std::vector<Rational> uniform3() { return {Rational(1, 3), Rational(1, 3), Rational(1, 3)}; }

void check_distribution(const Distribution& d) {
  double total = 0.0;
  for (double p : d.probabilities()) {
    CHECK(p >= 0.0);
    total += p;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  if (d.is_exact()) {
    Rational sum;
    for (const auto& q : d.exact_probabilities()) sum += q;
    CHECK(sum == 1);
  }
}

}  // namespace

TEST_CASE("random dictatorship") {
  CHECK(exact(random_dictatorship(two_disagreeing())) ==
        std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(random_dictatorship(unanimous())[0] == 1.0);
  auto lb = gen_radius_lb(Rational(7, 10), 5);
  auto rd = exact(random_dictatorship(lb.election));
  CHECK(rd[lb.i_star] == Rational(3, 10));
  CHECK(rd[lb.k_star] == 0);
  for (auto j : lb.u) CHECK(rd[j] == Rational(7, 50));
}

TEST_CASE("smart dictatorship") {
  CHECK(exact(smart_dictatorship(two_disagreeing())) ==
        std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(exact(smart_dictatorship(three_voters())) ==
        std::vector<Rational>{Rational(4, 5), Rational(1, 5), Rational(0)});
  CHECK(smart_dictatorship(unanimous(2))[0] == 1.0);
  auto solo = load_instance("3 1\n1 2 0 1\n");
  CHECK(smart_dictatorship(solo)[2] == 1.0);
}

TEST_CASE("plurality veto") {
  CHECK(plurality_veto(three_voters(), {0, 1, 2}) == 0);
  CHECK(plurality_veto(three_voters()) == 0);
  auto u = unanimous(4);
  auto n = expand_unit_voters(u).voter_count();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = n - 1 - i;
  CHECK(plurality_veto(u) == 0);
  CHECK(plurality_veto(u, order) == 0);
}

TEST_CASE("k-round plurality veto") {
  auto e = three_voters();
  CHECK(exact(k_round_plurality_veto(e, 0)) == exact(random_dictatorship(e)));
  CHECK(exact(k_round_plurality_veto(e, 1, {0, 1, 2})) ==
        std::vector<Rational>{Rational(1), Rational(0), Rational(0)});
  CHECK(k_round_plurality_veto(e, 3)[plurality_veto(e)] == 1.0);
  CHECK_THROWS(k_round_plurality_veto(e, 4));
  for (const auto& inst : small_corpus(30, 41)) {
    auto total = expand_unit_voters(inst).voter_count();
    for (std::size_t k = 0; k <= total; ++k) check_distribution(k_round_plurality_veto(inst, k));
  }
}

TEST_CASE("maximal lotteries") {
  CHECK(maximal_lotteries(unanimous(4))[0] == doctest::Approx(1.0));
  auto ml = maximal_lotteries(three_cycle());
  for (int i = 0; i < 3; ++i) CHECK(ml[i] == doctest::Approx(1.0 / 3.0));
  auto fig = two_disagreeing();
  auto g = condorcet_game(fig);
  CHECK(equilibrium_gap(condorcet_payoff(fig), g) < 1e-8);
  check_distribution(maximal_lotteries(fig));
}

TEST_CASE("Condorcet game triangle inequality") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> grid(0, 10);
  for (const auto& e : small_corpus(40, 43)) {
    auto s = condorcet_payoff(e);
    int m = e.candidate_count();
    auto draw = [&] {
      std::vector<double> p(m);
      double total = 0.0;
      while (total == 0.0) {
        total = 0.0;
        for (auto& v : p) total += (v = grid(rng));
      }
      for (auto& v : p) v /= total;
      return p;
    };
    auto game = [&](const std::vector<double>& a, const std::vector<double>& b) {
      double v = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) v += a[i] * s[i][j] * b[j];
      return v;
    };
    for (int t = 0; t < 10; ++t) {
      auto a = draw(), b = draw(), c = draw();
      CHECK(game(a, b) <= game(a, c) + game(c, b) + 1e-12);
    }
  }
}

TEST_CASE("consensus builder") {
  CHECK(exact(rcb(three_cycle(), kSixTenths)) == uniform3());
  auto s = pairwise_margins(three_cycle());
  CHECK(rcb_winner(three_cycle(), s, 0, kSixTenths) == 1);

  // With every margin below beta nothing is eliminated.
  Threshold high(Rational(99, 100));
  for (const auto& e : small_corpus(60, 44)) {
    auto m = pairwise_margins(e);
    bool below = true;
    for (int i = 0; i < e.candidate_count(); ++i)
      for (int j = 0; j < e.candidate_count(); ++j)
        if (i != j && m(i, j) >= Rational(99, 100)) below = false;
    if (below) CHECK(exact(rcb(e, high)) == exact(random_dictatorship(e)));
  }
}

TEST_CASE("consensus builder stays inside the uncovered set") {
  for (const auto& e : small_corpus(100, 45)) {
    for (int b : {51, 60, 67, 75, 90}) {
      Threshold beta(Rational(b, 100));
      auto uncovered = weighted_uncovered_set(e, beta);
      auto out = rcb(e, beta);
      check_distribution(out);
      for (auto c : out.support())
        CHECK(std::find(uncovered.begin(), uncovered.end(), c) != uncovered.end());
    }
  }
}

TEST_CASE("weighted uncovered set") {
  CHECK(weighted_uncovered_set(three_cycle(), kSixTenths) == std::vector<Candidate>{0, 1, 2});
  CHECK(weighted_uncovered_set(unanimous(4), kSixTenths) == std::vector<Candidate>{0});
  CHECK_THROWS(weighted_uncovered_set(three_cycle(), Threshold(Rational(1))));
}

TEST_CASE("covering relation structure") {
  for (const auto& e : small_corpus(100, 46)) {
    for (int b : {50, 55, 60, 67, 80}) {
      Threshold beta(Rational(b, 100));
      auto cov = covering_relation(e, beta);
      int m = e.candidate_count();
      auto uncovered = weighted_uncovered_set(e, beta);
      CHECK_FALSE(uncovered.empty());
      for (int a = 0; a < m; ++a) {
        CHECK_FALSE(cov[a][a]);
        for (int c = 0; c < m; ++c) {
          if (cov[a][c]) CHECK_FALSE(cov[c][a]);
          for (int d = 0; d < m; ++d)
            if (cov[a][c] && cov[c][d]) CHECK(cov[a][d]);
        }
        if (std::find(uncovered.begin(), uncovered.end(), a) == uncovered.end()) {
          bool by_member = false;
          for (auto u : uncovered) by_member = by_member || cov[u][a];
          CHECK(by_member);
        }
      }
    }
  }
}

TEST_CASE("radius") {
  auto lb = gen_radius_lb(Rational(7, 10), 5);
  auto out = radius(lb.election, Threshold(Rational(7, 10)));
  CHECK(out[lb.i_star] == 0.0);
  CHECK(out[lb.k_star] == 0.0);
  CHECK(exact(radius(three_cycle(), kSixTenths)) == uniform3());
  CHECK(radius(unanimous(4), kSixTenths)[0] == 1.0);
}

TEST_CASE("rddmis") {
  auto cycle = three_cycle();
  CHECK(rddmis_survivors(cycle, kSixTenths, {0, 1, 2}) == std::vector<Candidate>{2});
  CHECK(rddmis(cycle, kSixTenths)[2] == 1.0);
  auto fig = two_disagreeing();
  CHECK(rddmis_survivors(fig, kSixTenths).size() == 2);
  CHECK(exact(rddmis(fig, kSixTenths)) == exact(random_dictatorship(fig)));
}

TEST_CASE("rddmis survivors are independent and two-step dominating") {
  std::mt19937_64 rng(47);
  for (const auto& e : small_corpus(100, 48)) {
    int m = e.candidate_count();
    auto s = pairwise_margins(e);
    for (int b : {55, 60, 70, 85}) {
      Threshold beta(Rational(b, 100));
      std::vector<Candidate> order(m);
      for (int i = 0; i < m; ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), rng);
      auto survivors = rddmis_survivors(e, beta, order);
      CHECK_FALSE(survivors.empty());
      std::vector<bool> in(m, false);
      for (auto c : survivors) in[c] = true;
      auto edge = [&](int a, int c) { return a != c && beta.reached_by(s(a, c)); };
      for (auto a : survivors)
        for (auto c : survivors) CHECK_FALSE(edge(a, c));
      for (int v = 0; v < m; ++v) {
        if (in[v]) continue;
        bool reached = false;
        for (auto u : survivors) {
          if (edge(u, v)) reached = true;
          for (int w = 0; w < m; ++w)
            if (edge(u, w) && edge(w, v)) reached = true;
        }
        CHECK(reached);
      }
      check_distribution(rddmis(e, beta, order));
    }
  }
}

TEST_CASE("maximum matching") {
  CHECK(maximum_matching(3, 3, {{0, 1}, {0}, {1, 2}}) == 3);
  CHECK(maximum_matching(3, 3, {{0}, {0}, {0, 1}}) == 2);
  CHECK(maximum_matching(2, 2, {{}, {}}) == 0);
}

TEST_CASE("matching uncovered set and domination graphs") {
  auto u = unanimous(3);
  CHECK(matching_uncovered_member(u, 0));
  CHECK(domination_graph_member(u, 0));
  for (const auto& e : small_corpus(100, 49)) {
    bool any = false;
    for (int a = 0; a < e.candidate_count(); ++a) {
      bool member = matching_uncovered_member(e, a);
      any = any || member;
      if (domination_graph_member(e, a)) CHECK(member);
    }
    CHECK(any);
    CHECK(domination_graph_member(e, plurality_veto(e)));
  }
}
