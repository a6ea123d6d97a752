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

#ifndef METRICVOTE_MIXTURES_HPP
#define METRICVOTE_MIXTURES_HPP

#include <vector>

#include "metricvote/election.hpp"

namespace metricvote {

enum class BetaRule { kRcb, kRadius };
enum class BetaDensity { kUniform, kRhoRadius };

// (1/2, B) cut at the instance's margins. Within an interval no margin
// crosses beta, so the rule's output is constant there.
struct BetaInterval {
  double lo;
  double hi;
  double mass;
  Distribution output;
};

struct BetaPartition {
  std::vector<double> breakpoints;  // margins strictly inside (1/2, B)
  std::vector<BetaInterval> intervals;
};

BetaPartition beta_partition(const ElectionInstance& election, BetaRule rule, BetaDensity density,
                             double b);

// Mixture of the beta-rule over beta drawn from the density on (1/2, B).
Distribution integrate_rule_over_beta(const ElectionInstance& election, BetaRule rule,
                                      BetaDensity density, double b);

// Mass of [lo, hi] under rho(beta) = p / (1 - p) / (1 - beta^2).
double rho_mass(double lo, double hi, double b);

// p = 1 / (1 + integral over (1/2, B) of 1 / (1 - beta^2)).
double rho_ml_probability(double b);

inline constexpr double kMlRcbProbability = 0.70710678118654752440;  // 1/sqrt(2)
inline constexpr double kMlRcbUpper = 0.91421356237309504880;        // sqrt(2) - 1/2
inline constexpr double kMlRadiusUpper = 0.876353;

// 1/sqrt(2) ML plus the uniform beta-RCB mixture on (1/2, sqrt(2) - 1/2).
Distribution mix_ml_rcb(const ElectionInstance& election);

// p ML plus the rho-weighted beta-RaDiUS mixture on (1/2, B).
Distribution mix_ml_radius(const ElectionInstance& election, double b = kMlRadiusUpper);

// Distortion guarantee of the ML mixture as a function of B.
double distortion_bound_curve(double b, BetaRule rule);

struct BoundMinimum {
  double b;
  double value;
};

// Golden-section search of distortion_bound_curve over (1/2, 1).
BoundMinimum minimize_bound_curve(BetaRule rule, double tolerance = 1e-9);

}  // namespace metricvote

#endif  // METRICVOTE_MIXTURES_HPP
