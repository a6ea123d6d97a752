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

#include <cmath>
#include <limits>
#include <random>

#include "metricvote/distortion.hpp"
#include "metricvote/rules.hpp"
#include "support.hpp"

using namespace metricvote;
using namespace metricvote::testing;

namespace {

DistortionOptions with(Formulation f) {
  DistortionOptions o;
  o.formulation = f;
  return o;
}

void check_witness(const ElectionInstance& e, const Distribution& d, const DistortionReport& r) {
  if (!std::isfinite(r.value)) return;
  CHECK(is_consistent(e, r.witness_metric, 1e-9));
  CHECK(satisfies_closure(r.witness_metric, 1e-9));
  auto costs = social_costs(e, r.witness_metric);
  double expected = 0.0;
  for (int j = 0; j < e.candidate_count(); ++j) expected += d[j] * costs[j];
  double best = *std::min_element(costs.begin(), costs.end());
  if (best <= 0.0) return;
  CHECK(expected / best == doctest::Approx(r.value).epsilon(1e-8));
  CHECK(r.value >= 1.0 - 1e-9);
}

}  // namespace

TEST_CASE("two disagreeing voters") {
  auto e = two_disagreeing();
  for (auto f : {Formulation::kClosureLp, Formulation::kBiasedLp}) {
    auto rd = exact_distortion(e, random_dictatorship(e), with(f));
    CHECK(rd.value == doctest::Approx(2.0).epsilon(1e-9));
    check_witness(e, random_dictatorship(e), rd);
    for (Candidate c : {0, 1}) {
      auto pm = exact_distortion(e, Distribution::point_mass(2, c), with(f));
      CHECK(pm.value == doctest::Approx(3.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("random dictatorship on a lone dissenter") {
  for (int n : {2, 3, 4, 6}) {
    auto e = lone_dissenter(n);
    auto r = exact_distortion(e, random_dictatorship(e));
    CHECK(r.value == doctest::Approx(3.0 - 2.0 / n).epsilon(1e-9));
  }
}

TEST_CASE("unbounded distortion") {
  auto u = unanimous(3);
  auto r = exact_distortion(u, Distribution::point_mass(3, 1));
  CHECK(std::isinf(r.value));
  CHECK(forced_zero_set(u, 0) == std::vector<bool>{true, false, false});
  auto ok = exact_distortion(u, Distribution::point_mass(3, 0));
  CHECK(ok.value == doctest::Approx(1.0));
}

TEST_CASE("formulations agree and witnesses are valid") {
  for (const auto& e : small_corpus(40, 61)) {
    for (const auto& d : {maximal_lotteries(e), random_dictatorship(e),
                          Distribution::point_mass(e.candidate_count(), plurality_veto(e))}) {
      auto closure = exact_distortion(e, d, with(Formulation::kClosureLp));
      auto biased = exact_distortion(e, d, with(Formulation::kBiasedLp));
      CHECK(closure.value == doctest::Approx(biased.value).epsilon(1e-7));
      check_witness(e, d, closure);
      check_witness(e, d, biased);
      DistortionOptions no_prune = with(Formulation::kBiasedLp);
      no_prune.prune = false;
      CHECK(exact_distortion(e, d, no_prune).value == doctest::Approx(biased.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("biased ratio") {
  auto e = two_disagreeing();
  BiasedVector<double> zeros{0, {0.0, 0.0}};
  CHECK(biased_ratio(e, zeros, Distribution::point_mass(2, 1)) == 1.0);
  BiasedVector<double> x{0, {0.0, 2.0}};
  CHECK(biased_ratio(e, x, random_dictatorship(e)) == doctest::Approx(2.0));
  BiasedVector<Rational> xq{0, {Rational(0), Rational(2)}};
  CHECK(biased_ratio_exact(e, xq, random_dictatorship(e)) == 2);

  auto lb = gen_radius_lb(Rational(7, 10), 50);
  BiasedVector<double> two;
  two.i_star = lb.i_star;
  two.x.assign(lb.election.candidate_count(), 2.0);
  two.x[lb.i_star] = 0.0;
  double v = biased_ratio(lb.election, two, radius(lb.election, Threshold(Rational(7, 10))));
  CHECK(v > 1.0 + 2.0 / 0.7 - 0.05);
}

TEST_CASE("biased LP bound dominates the cheap bound check") {
  for (const auto& e : small_corpus(30, 62)) {
    auto d = maximal_lotteries(e);
    auto s = pairwise_margins(e);
    for (Candidate i = 0; i < e.candidate_count(); ++i) {
      auto sol = solve_biased_lp(e, d, i);
      if (!std::isfinite(sol.ratio)) continue;
      CHECK(sol.ratio == doctest::Approx(biased_ratio(e, sol.x, d)).epsilon(1e-9));
      CHECK(sol.ratio <= biased_ratio_upper_bound(e, s, d.probabilities(), i) + 1e-9);
    }
  }
}

TEST_CASE("constraint family") {
  for (const auto& e : small_corpus(60, 63)) {
    CHECK(fancy_constraints_check(e, maximal_lotteries(e), 1.0, 1e-9).empty());
    CHECK(fancy_constraints_check(e, random_dictatorship(e), 1.0).empty());
  }
  auto e = two_disagreeing();
  auto v = fancy_constraints_check(e, Distribution::point_mass(2, 1), 0.5);
  CHECK_FALSE(v.empty());
  auto big = gen_random(16, 2, 1);
  CHECK_THROWS(fancy_constraints_check(big, random_dictatorship(big), 1.0));
}

TEST_CASE("constraint family soundness") {
  for (const auto& e : small_corpus(40, 64)) {
    auto d = maximal_lotteries(e);
    for (double lambda : {0.6, 0.8, 1.0}) {
      if (!fancy_constraints_check(e, d, lambda, 1e-9).empty()) continue;
      CHECK(exact_distortion(e, d).value <= 1.0 + 2.0 * lambda + 1e-6);
    }
  }
}

TEST_CASE("biased search") {
  auto e = two_disagreeing();
  auto r = search_worst_biased(e, Distribution::point_mass(2, 0));
  CHECK(r.ratio == doctest::Approx(3.0));

  auto lb = gen_radius_lb(Rational(7, 10), 10);
  auto d = radius(lb.election, Threshold(Rational(7, 10)));
  auto found = search_worst_biased(lb.election, d);
  BiasedVector<double> two;
  two.i_star = lb.i_star;
  two.x.assign(lb.election.candidate_count(), 2.0);
  two.x[lb.i_star] = 0.0;
  CHECK(found.ratio >= biased_ratio(lb.election, two, d) - 1e-9);

  for (const auto& inst : small_corpus(30, 65)) {
    auto dist = maximal_lotteries(inst);
    auto s = search_worst_biased(inst, dist);
    CHECK(s.ratio <= exact_distortion(inst, dist).value + 1e-6);
  }
}

TEST_CASE("maximal lotteries pointwise inequality") {
  auto cycle = three_cycle();
  auto ml = maximal_lotteries(cycle);
  CHECK(ml_pointwise_check(cycle, BiasedVector<double>{0, {0.0, 1.0, 2.0}}, ml));
  CHECK(ml_pointwise_check(cycle, BiasedVector<double>{0, {0.0, 0.0, 0.0}}, ml));
  std::mt19937_64 rng(66);
  for (const auto& e : small_corpus(100, 67)) {
    auto x = to_double(random_offsets(e.candidate_count(), rng));
    CHECK(ml_pointwise_check(e, x, maximal_lotteries(e)));
  }
}

TEST_CASE("report formatting") {
  auto e = two_disagreeing();
  auto r = exact_distortion(e, random_dictatorship(e));
  auto text = format_report(r);
  CHECK(text.find("value 2") != std::string::npos);
  CHECK(text.find("i_star") != std::string::npos);
}
