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


// Shared fixtures for the unit tests.

#ifndef METRICVOTE_TESTS_SUPPORT_HPP
#define METRICVOTE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "metricvote/election.hpp"
#include "metricvote/metrics.hpp"

namespace metricvote::testing {

inline ElectionInstance two_disagreeing() { return load_instance("2 2\n1 0 1\n1 1 0\n"); }

// a>b>c, b>c>a, c>a>b
inline ElectionInstance three_cycle() { return load_instance("3 3\n1 0 1 2\n1 1 2 0\n1 2 0 1\n"); }

// a>b>c, a>c>b, b>c>a
inline ElectionInstance three_voters() { return load_instance("3 3\n1 0 1 2\n1 0 2 1\n1 1 2 0\n"); }

inline ElectionInstance unanimous(int m = 3) {
  std::vector<Ballot> ballots;
  std::vector<Candidate> ranking(m);
  for (int i = 0; i < m; ++i) ranking[i] = i;
  ballots.push_back({Rational(2), ranking});
  std::reverse(ranking.begin() + 1, ranking.end());
  ballots.push_back({Rational(1), ranking});
  return ElectionInstance(m, std::move(ballots));
}

// One voter ranks a>b, the other n-1 rank b>a.
inline ElectionInstance lone_dissenter(int n) {
  return ElectionInstance(2, {{Rational(1), {0, 1}}, {Rational(n - 1), {1, 0}}});
}

inline std::vector<ElectionInstance> small_corpus(std::size_t count, std::uint64_t seed) {
  return gen_corpus(count, 2, 5, 2, 6, seed);
}

// Offsets on a small integer grid so that rational checks stay exact.
inline BiasedVector<Rational> random_offsets(int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, m - 1);
  std::uniform_int_distribution<int> level(0, 6);
  BiasedVector<Rational> x;
  x.i_star = pick(rng);
  x.x.resize(m);
  for (int c = 0; c < m; ++c) {
    x.x[c] = c == x.i_star ? Rational(0) : Rational(level(rng), 2);
    x.x[c].canonicalize();
  }
  return x;
}

inline BiasedVector<double> to_double(const BiasedVector<Rational>& x) {
  BiasedVector<double> out;
  out.i_star = x.i_star;
  for (const auto& v : x.x) out.x.push_back(v.get_d());
  return out;
}

}  // namespace metricvote::testing

#endif  // METRICVOTE_TESTS_SUPPORT_HPP
