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
#include <array>
#include <cmath>
#include <random>

#include "metricvote/distortion.hpp"
#include "metricvote/metrics.hpp"
#include "metricvote/rules.hpp"
#include "support.hpp"

using namespace metricvote;
using namespace metricvote::testing;

namespace {

BiasedVector<Rational> fig1_offsets() {
  BiasedVector<Rational> x;
  x.i_star = 0;
  x.x = {Rational(0), Rational(2)};
  return x;
}

BiasedVector<Rational> radius_lb_offsets(const RadiusLowerBound& lb) {
  BiasedVector<Rational> x;
  x.i_star = lb.i_star;
  x.x.assign(lb.election.candidate_count(), Rational(2));
  x.x[lb.i_star] = 0;
  return x;
}

}  // namespace

TEST_CASE("social cost") {
  auto e = two_disagreeing();
  MetricSpace<Rational> d(2, 2);
  d(0, 0) = 0;
  d(1, 0) = 2;
  d(0, 1) = 1;
  d(1, 1) = 1;
  CHECK(social_cost(e, d, 0) == Rational(1, 2));
  CHECK(social_cost(e, d, 1) == Rational(3, 2));
  CHECK(is_consistent(e, d));
  CHECK(satisfies_closure(d));

  MetricSpace<Rational> zero(2, 2);
  CHECK(social_cost(e, zero, 1) == 0);
  CHECK(is_consistent(e, zero));

  MetricSpace<Rational> bad = d;
  bad(0, 0) = 2;
  bad(1, 0) = 0;
  CHECK_FALSE(is_consistent(e, bad));
}

TEST_CASE("biased metric on two voters") {
  auto e = two_disagreeing();
  auto d = biased_metric(e, fig1_offsets());
  CHECK(d(0, 0) == 0);
  CHECK(d(1, 0) == 2);
  CHECK(d(0, 1) == 1);
  CHECK(d(1, 1) == 1);

  BiasedVector<Rational> zeros{0, {Rational(0), Rational(0)}};
  auto z = biased_metric(e, zeros);
  for (int c = 0; c < 2; ++c)
    for (std::size_t v = 0; v < 2; ++v) CHECK(z(c, v) == 0);
}

TEST_CASE("biased vectors are validated") {
  BiasedVector<Rational> nonzero_star{0, {Rational(1), Rational(0)}};
  CHECK_THROWS(nonzero_star.validate());
  BiasedVector<Rational> negative{0, {Rational(0), Rational(-1)}};
  CHECK_THROWS(negative.validate());
}

TEST_CASE("social cost of the reference under the radius construction") {
  auto lb = gen_radius_lb(Rational(7, 10), 5);
  auto d = biased_metric(lb.election, radius_lb_offsets(lb));
  CHECK(social_cost(lb.election, d, lb.i_star) == Rational(7, 10));
}

TEST_CASE("r and l curves on two voters") {
  auto e = two_disagreeing();
  auto x = fig1_offsets();
  auto r = r_curve(e, x);
  CHECK(r.breakpoints() == std::vector<Rational>{Rational(0), Rational(2)});
  CHECK(r.levels() == std::vector<Rational>{Rational(1, 2)});
  CHECK(r(Rational(1)) == Rational(1, 2));
  CHECK(r(Rational(3)) == 0);
  CHECK(r.integral() == 1);

  auto l = ell_curve(e, x, std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(l.integral() == Rational(1, 2));
  auto point = ell_curve(e, x, std::vector<Rational>{Rational(1), Rational(0)});
  CHECK(point.integral() == 0);

  BiasedVector<Rational> zeros{0, {Rational(0), Rational(0)}};
  CHECK(r_curve(e, zeros).integral() == 0);
}

TEST_CASE("alpha of beta") {
  auto e = two_disagreeing();
  auto x = fig1_offsets();
  CHECK(alpha_of_beta(e, x, Rational(3, 5)) == 0);
  CHECK(alpha_of_beta(e, x, Rational(2, 5)) == 2);
  BiasedVector<Rational> zeros{0, {Rational(0), Rational(0)}};
  CHECK_THROWS(alpha_of_beta(e, zeros, Rational(3, 5)));
}

TEST_CASE("(alpha, beta) consistency") {
  auto lb = gen_radius_lb(Rational(7, 10), 5);
  auto x = radius_lb_offsets(lb);
  Rational beta(7, 10);
  CHECK_FALSE(check_ab_consistent(lb.election, x, Rational(1, 100), beta));
  CHECK(check_ab_consistent(lb.election, x, Rational(1 / beta), beta));

  std::mt19937_64 rng(21);
  for (const auto& e : small_corpus(100, 22)) {
    auto y = random_offsets(e.candidate_count(), rng);
    for (int b : {55, 70, 90}) {
      Rational bb(b, 100);
      bb.canonicalize();
      CHECK(check_ab_consistent(e, y, Rational(1 / bb), bb));
    }
    BiasedVector<Rational> zeros{y.i_star, std::vector<Rational>(e.candidate_count())};
    CHECK(check_ab_consistent(e, zeros, Rational(0), Rational(3, 5)));
    if (r_curve(e, y).integral() > 0) {
      Rational beta(3, 5);
      auto alpha = alpha_of_beta(e, y, beta);
      CHECK(check_ab_consistent(e, y, alpha, beta));
    }
  }
}

TEST_CASE("biased metrics are valid and the integral identities are exact") {
  std::mt19937_64 rng(5);
  for (const auto& e : small_corpus(200, 6)) {
    auto x = random_offsets(e.candidate_count(), rng);
    auto d = biased_metric(e, x);
    CHECK(is_consistent(e, d));
    CHECK(satisfies_closure(d));
    auto costs = social_costs(e, d);
    CHECK(r_curve(e, x).integral() == 2 * costs[x.i_star]);
    auto p = plurality(e).exact_probabilities();
    Rational gap;
    for (int j = 0; j < e.candidate_count(); ++j) gap += p[j] * (costs[j] - costs[x.i_star]);
    CHECK(ell_curve(e, x, p).integral() == gap);
  }
}

TEST_CASE("double and rational metrics agree") {
  std::mt19937_64 rng(8);
  for (const auto& e : small_corpus(50, 9)) {
    auto x = random_offsets(e.candidate_count(), rng);
    auto exact = biased_metric(e, x);
    auto approx = biased_metric(e, to_double(x));
    for (int c = 0; c < e.candidate_count(); ++c)
      for (std::size_t v = 0; v < e.block_count(); ++v)
        CHECK(approx(c, v) == doctest::Approx(exact(c, v).get_d()));
    CHECK(r_curve(e, to_double(x)).integral() ==
          doctest::Approx(r_curve(e, x).integral().get_d()));
  }
}

// Points in the plane give a metric with candidate-candidate distances, so
// offsets x_i = d(i, i*) can be formed directly.
TEST_CASE("biased metrics dominate embedded metrics") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::uniform_int_distribution<int> size(2, 6);
  for (int trial = 0; trial < 200; ++trial) {
    int m = size(rng);
    int n = size(rng);
    std::vector<std::array<double, 2>> cand(m), voter(n);
    for (auto& p : cand) p = {coord(rng), coord(rng)};
    for (auto& p : voter) p = {coord(rng), coord(rng)};
    auto dist = [](const std::array<double, 2>& a, const std::array<double, 2>& b) {
      return std::hypot(a[0] - b[0], a[1] - b[1]);
    };
    std::vector<Ballot> ballots;
    MetricSpace<double> d(m, n);
    for (int v = 0; v < n; ++v) {
      std::vector<Candidate> ranking(m);
      for (int c = 0; c < m; ++c) {
        ranking[c] = c;
        d(c, v) = dist(cand[c], voter[v]);
      }
      std::sort(ranking.begin(), ranking.end(),
                [&](Candidate a, Candidate b) { return d(a, v) < d(b, v); });
      ballots.push_back({Rational(1), ranking});
    }
    ElectionInstance e(m, ballots);
    REQUIRE(is_consistent(e, d));
    auto costs = social_costs(e, d);
    Candidate star = static_cast<Candidate>(std::min_element(costs.begin(), costs.end()) - costs.begin());
    BiasedVector<double> x;
    x.i_star = star;
    for (int c = 0; c < m; ++c) x.x.push_back(dist(cand[c], cand[star]));
    auto hat = biased_metric(e, x);
    auto hat_costs = social_costs(e, hat);
    CHECK(hat_costs[star] <= costs[star] + 1e-12);
    for (int j = 0; j < m; ++j)
      CHECK(hat_costs[j] - hat_costs[star] >= costs[j] - costs[star] - 1e-12);
  }
}

TEST_CASE("step function basics") {
  StepFunction<Rational> f({Rational(0), Rational(1), Rational(3)}, {Rational(2), Rational(1, 2)});
  CHECK(f.integral() == 3);
  CHECK(f(Rational(0)) == 2);
  CHECK(f(Rational(1)) == Rational(1, 2));
  CHECK(f(Rational(5)) == 0);
}
