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

#ifndef METRICVOTE_METRICS_HPP
#define METRICVOTE_METRICS_HPP

#include <string>
#include <vector>

#include "metricvote/election.hpp"

namespace metricvote {

// Candidate-to-voter-block distances, row per candidate. Scalar is Rational
// for exact identities or double for search and LP witnesses.
template <class Scalar>
class MetricSpace {
 public:
  MetricSpace() = default;
  MetricSpace(int candidates, std::size_t blocks)
      : m_(candidates), k_(blocks), d_(static_cast<std::size_t>(candidates) * blocks) {}

  int candidate_count() const { return m_; }
  std::size_t block_count() const { return k_; }
  const Scalar& operator()(Candidate c, std::size_t v) const { return d_[c * k_ + v]; }
  Scalar& operator()(Candidate c, std::size_t v) { return d_[c * k_ + v]; }

 private:
  int m_ = 0;
  std::size_t k_ = 0;
  std::vector<Scalar> d_;
};

// Offsets x_c >= 0 from the reference candidate, x[i_star] = 0.
template <class Scalar>
struct BiasedVector {
  Candidate i_star = 0;
  std::vector<Scalar> x;

  void validate() const;
};

// Piecewise-constant, right-continuous function on [0, inf): levels[i] holds
// on [breakpoints[i], breakpoints[i+1]) and the value is 0 from the last
// breakpoint on. breakpoints[0] is always 0.
template <class Scalar>
class StepFunction {
 public:
  StepFunction(std::vector<Scalar> breakpoints, std::vector<Scalar> levels);

  const std::vector<Scalar>& breakpoints() const { return breakpoints_; }
  const std::vector<Scalar>& levels() const { return levels_; }
  Scalar operator()(const Scalar& t) const;
  const Scalar& integral() const { return integral_; }

 private:
  std::vector<Scalar> breakpoints_;
  std::vector<Scalar> levels_;
  Scalar integral_;
};

template <class Scalar>
Scalar social_cost(const ElectionInstance& election, const MetricSpace<Scalar>& d, Candidate i);

template <class Scalar>
std::vector<Scalar> social_costs(const ElectionInstance& election, const MetricSpace<Scalar>& d);

// Every block's ranking is sorted by distance, up to `tol`.
template <class Scalar>
bool is_consistent(const ElectionInstance& election, const MetricSpace<Scalar>& d,
                   const Scalar& tol = Scalar(0));

// d[i][u] <= d[i][v] + d[j][v] + d[j][u] for all candidates i, j and blocks
// u, v, up to `tol`.
template <class Scalar>
bool satisfies_closure(const MetricSpace<Scalar>& d, const Scalar& tol = Scalar(0));

// D_v = max over i ranked weakly above j by v of x_i - x_j.
template <class Scalar>
std::vector<Scalar> voter_spreads(const ElectionInstance& election, const BiasedVector<Scalar>& x);

template <class Scalar>
MetricSpace<Scalar> biased_metric(const ElectionInstance& election, const BiasedVector<Scalar>& x);

// r(t) = weight of voters v with D_v > t; its integral is R = 2 SC(i*).
template <class Scalar>
StepFunction<Scalar> r_curve(const ElectionInstance& election, const BiasedVector<Scalar>& x);

// l(D, t) = sum over j with x_j > t of s_{I_t > j} p_j, I_t = {j : x_j <= t}.
template <class Scalar>
StepFunction<Scalar> ell_curve(const ElectionInstance& election, const BiasedVector<Scalar>& x,
                               const std::vector<Scalar>& p);

// Probabilities of D in the requested scalar; Rational requires an exact D.
template <class Scalar>
std::vector<Scalar> probabilities_as(const Distribution& d);

// min{t >= 0 : r(t) < beta} / R. Throws ValidationError when R = 0.
template <class Scalar>
Scalar alpha_of_beta(const ElectionInstance& election, const BiasedVector<Scalar>& x,
                     const Scalar& beta);

// s_{k > i*} >= beta implies x_k <= alpha R, for every k.
template <class Scalar>
bool check_ab_consistent(const ElectionInstance& election, const BiasedVector<Scalar>& x,
                         const Scalar& alpha, const Scalar& beta);

// Pairwise strengthening: s_{k > i} >= beta implies x_k - x_i <= alpha R.
template <class Scalar>
bool check_ab_consistent_pairwise(const ElectionInstance& election,
                                  const BiasedVector<Scalar>& x, const Scalar& alpha,
                                  const Scalar& beta);

// Text form: "m k" header and one row of k distances per candidate.
std::string format_metric(const MetricSpace<double>& d);
std::string format_metric(const MetricSpace<Rational>& d);

}  // namespace metricvote

#endif  // METRICVOTE_METRICS_HPP
