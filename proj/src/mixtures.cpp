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

#include "metricvote/mixtures.hpp"

#include <algorithm>
#include <cmath>

#include "metricvote/rules.hpp"

namespace metricvote {

namespace {

void require_upper(double b) {
  if (!(b > 0.5 && b < 1.0)) throw ValidationError("B must lie in (1/2, 1)");
}

Distribution run_beta_rule(const ElectionInstance& election, BetaRule rule, double beta) {
  const Threshold t(beta);
  return rule == BetaRule::kRcb ? rcb(election, t) : radius(election, t);
}

}  // namespace

double rho_ml_probability(double b) {
  require_upper(b);
  return 1.0 / (1.0 + std::atanh(b) - std::atanh(0.5));
}

double rho_mass(double lo, double hi, double b) {
  const double p = rho_ml_probability(b);
  return p / (1.0 - p) * (std::atanh(hi) - std::atanh(lo));
}

BetaPartition beta_partition(const ElectionInstance& election, BetaRule rule, BetaDensity density,
                             double b) {
  require_upper(b);
  const PairwiseMatrix s = pairwise_margins(election);
  BetaPartition out;
  for (int i = 0; i < election.candidate_count(); ++i) {
    for (int j = 0; j < election.candidate_count(); ++j) {
      const double v = s(i, j).get_d();
      if (i != j && v > 0.5 && v < b) out.breakpoints.push_back(v);
    }
  }
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()),
                        out.breakpoints.end());
  std::vector<double> cuts{0.5};
  cuts.insert(cuts.end(), out.breakpoints.begin(), out.breakpoints.end());
  cuts.push_back(b);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k], hi = cuts[k + 1];
    const double mass =
        density == BetaDensity::kUniform ? (hi - lo) / (b - 0.5) : rho_mass(lo, hi, b);
    out.intervals.push_back({lo, hi, mass, run_beta_rule(election, rule, (lo + hi) / 2.0)});
  }
  return out;
}

Distribution integrate_rule_over_beta(const ElectionInstance& election, BetaRule rule,
                                      BetaDensity density, double b) {
  const BetaPartition part = beta_partition(election, rule, density, b);
  std::vector<double> weights;
  std::vector<Distribution> outputs;
  for (const BetaInterval& iv : part.intervals) {
    weights.push_back(iv.mass);
    outputs.push_back(iv.output);
  }
  return mixture(weights, outputs);
}

Distribution mix_ml_rcb(const ElectionInstance& election) {
  return mixture(std::vector<double>{kMlRcbProbability, 1.0 - kMlRcbProbability},
                 {maximal_lotteries(election),
                  integrate_rule_over_beta(election, BetaRule::kRcb, BetaDensity::kUniform,
                                           kMlRcbUpper)});
}

Distribution mix_ml_radius(const ElectionInstance& election, double b) {
  const double p = rho_ml_probability(b);
  return mixture(std::vector<double>{p, 1.0 - p},
                 {maximal_lotteries(election),
                  integrate_rule_over_beta(election, BetaRule::kRadius, BetaDensity::kRhoRadius,
                                           b)});
}

double distortion_bound_curve(double b, BetaRule rule) {
  require_upper(b);
  double ratio = 0.0;
  if (rule == BetaRule::kRcb) {
    ratio = 1.0 / (b + 0.5) + 0.5 * (b - 0.5);
  } else {
    const double num = std::log(2.0 / 3.0) + std::log1p(b);
    const double den = 1.0 - 0.5 * std::log(3.0) + 0.5 * (std::log1p(b) - std::log1p(-b));
    ratio = 1.0 - num / den;
  }
  return 1.0 + 2.0 * ratio;
}

BoundMinimum minimize_bound_curve(BetaRule rule, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.5 + 1e-9, hi = 1.0 - 1e-9;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = distortion_bound_curve(x1, rule), f2 = distortion_bound_curve(x2, rule);
  while (hi - lo > tolerance) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = distortion_bound_curve(x1, rule);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = distortion_bound_curve(x2, rule);
    }
  }
  const double b = (lo + hi) / 2.0;
  return {b, distortion_bound_curve(b, rule)};
}

}  // namespace metricvote
