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

#ifndef METRICVOTE_DISTORTION_HPP
#define METRICVOTE_DISTORTION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "metricvote/election.hpp"
#include "metricvote/metrics.hpp"

namespace metricvote {

enum class Formulation {
  kAuto,
  // LP over all candidate-voter distances with the four-point closure.
  kClosureLp,
  // LP over biased metrics only (offsets x plus auxiliary prefix-max and
  // suffix-min chains); sparse interior point on large instances.
  kBiasedLp,
};

const char* to_string(Formulation f);

struct DistortionOptions {
  Formulation formulation = Formulation::kAuto;
  // kAuto uses the closure LP while m(m-1)k(k-1) stays below this.
  std::size_t closure_row_limit = 20000;
  // Biased route only: skip reference candidates whose cheap upper bound
  // cannot beat the incumbent.
  bool prune = true;
};

struct DistortionReport {
  double value = 1.0;  // +inf when some consistent metric makes the ratio unbounded
  MetricSpace<double> witness_metric;
  Candidate witness_i_star = 0;
  std::vector<double> per_candidate_costs;
  Formulation formulation = Formulation::kClosureLp;
};

// Worst-case E_D[SC] / min SC over metrics consistent with the election.
DistortionReport exact_distortion(const ElectionInstance& election, const Distribution& d,
                                  const DistortionOptions& options = {});

// "value", "i_star", "formulation", then the witness rows.
std::string format_report(const DistortionReport& report);

// Candidates whose offset is forced to 0 when x_{i*} = 0 and no voter sees
// an offset decrease down their ranking: those ranked above a member by
// some voter, closed transitively.
std::vector<bool> forced_zero_set(const ElectionInstance& election, Candidate i_star);

// 1 + 2 L(D) / R under the biased metric of x (1 when R = L = 0, +inf when
// only R = 0).
double biased_ratio(const ElectionInstance& election, const BiasedVector<double>& x,
                    const Distribution& d);
Rational biased_ratio_exact(const ElectionInstance& election, const BiasedVector<Rational>& x,
                            const Distribution& d);

struct BiasedLpSolution {
  double ratio = 1.0;          // achieved by x
  double upper_bound = 1.0;    // LP bound on every biased ratio for this i*
  BiasedVector<double> x;
};

// Maximizes the biased ratio for a fixed reference candidate. Dense simplex
// for small programs, interior point otherwise; the recovered x is
// re-evaluated and must match the LP bound to 1e-6.
BiasedLpSolution solve_biased_lp(const ElectionInstance& election, const Distribution& d,
                                 Candidate i_star);

// Cheap upper bound on the biased ratio for reference i*, from
// l(t) <= P(I_t^c) and r(t) >= 1 - s_{i* > I_t^c}.
double biased_ratio_upper_bound(const ElectionInstance& election, const PairwiseMatrix& s,
                                const std::vector<double>& p, Candidate i_star);

struct ConstraintViolation {
  std::vector<Candidate> subset;  // I
  Candidate i_star;
  double lhs;
  double rhs;
};

// All (I, i*) with i* in I, I a nonempty proper subset, and
// sum_{j not in I} s_{I>j} p_j > lambda (1 - s_{i* > I^c}) + tol. m <= 15.
std::vector<ConstraintViolation> fancy_constraints_check(const ElectionInstance& election,
                                                         const Distribution& d, double lambda,
                                                         double tol = 1e-12);

struct BiasedSearchResult {
  BiasedVector<double> x;
  double ratio = 1.0;
  std::size_t evaluations = 0;
};

// Grid enumeration of offsets when it fits the budget, otherwise random
// two-level starts; both followed by coordinate refinement.
BiasedSearchResult search_worst_biased(const ElectionInstance& election, const Distribution& d,
                                       std::size_t budget = 4096, std::uint64_t seed = 0);

// l(D, t) <= P(I_t^c) / 2 <= r(t) at every breakpoint, to `tol`.
bool ml_pointwise_check(const ElectionInstance& election, const BiasedVector<double>& x,
                        const Distribution& ml, double tol = 1e-8);

}  // namespace metricvote

#endif  // METRICVOTE_DISTORTION_HPP
