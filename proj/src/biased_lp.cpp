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

#include <algorithm>
#include <cmath>
#include <limits>

#include "metricvote/distortion.hpp"
#include "metricvote/lp.hpp"

namespace metricvote {

namespace {

constexpr std::size_t kNoVar = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kDenseVariableLimit = 400;

// All rows are "terms <= rhs"; every variable lives in [0, upper].
struct ChainProgram {
  std::size_t vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<LpTerm>> rows;
  std::vector<double> rhs;
  std::vector<std::size_t> x_var;
  double upper = 0.0;

  std::size_t add_var() {
    objective.push_back(0.0);
    return vars++;
  }
  void add_row(std::vector<LpTerm> terms, double b) {
    rows.push_back(std::move(terms));
    rhs.push_back(b);
  }
};

// max sum_v w_v sum_t p_{r_v(t)} y_{v,t}  with  y_{v,t} = min of x below
// position t, M_{v,t} = max of x above, z_v >= M_{v,t-1} - x_{r_v(t)} and
// sum_v w_v z_v <= 1. At the optimum z_v is v's spread D_v, so the value is
// L / R with R normalized to 1.
ChainProgram build_chain_program(const ElectionInstance& election, const std::vector<double>& p,
                                 Candidate i_star) {
  const int m = election.candidate_count();
  ChainProgram cp;
  cp.x_var.assign(m, kNoVar);
  for (Candidate c = 0; c < m; ++c) {
    if (c != i_star) cp.x_var[c] = cp.add_var();
  }
  double w_min = 1.0;
  for (const Ballot& b : election.ballots()) w_min = std::min(w_min, b.weight.get_d());
  cp.upper = static_cast<double>(m) / w_min;

  auto x_term = [&](Candidate c, double coef, std::vector<LpTerm>& terms) {
    if (cp.x_var[c] != kNoVar) terms.push_back({cp.x_var[c], coef});
  };

  std::vector<LpTerm> budget;
  for (std::size_t v = 0; v < election.block_count(); ++v) {
    const double w = election.weight(v).get_d();
    std::vector<std::size_t> prefix_max(m - 1 > 0 ? m - 1 : 0);
    for (int t = 0; t + 1 < m; ++t) {
      prefix_max[t] = cp.add_var();
      std::vector<LpTerm> row;
      x_term(election.at(v, t), 1.0, row);
      if (!row.empty()) {
        row.push_back({prefix_max[t], -1.0});
        cp.add_row(std::move(row), 0.0);
      }
      if (t > 0) cp.add_row({{prefix_max[t - 1], 1.0}, {prefix_max[t], -1.0}}, 0.0);
    }
    const std::size_t z = cp.add_var();
    budget.push_back({z, w});
    for (int t = 1; t < m; ++t) {
      std::vector<LpTerm> row{{prefix_max[t - 1], 1.0}, {z, -1.0}};
      x_term(election.at(v, t), -1.0, row);
      cp.add_row(std::move(row), 0.0);
    }
    const int star = election.position(v, i_star);
    std::size_t below = kNoVar;
    for (int t = m - 1; t > star; --t) {
      const Candidate c = election.at(v, t);
      const std::size_t y = cp.add_var();
      cp.objective[y] = w * p[c];
      std::vector<LpTerm> row{{y, 1.0}};
      x_term(c, -1.0, row);
      cp.add_row(std::move(row), 0.0);
      if (below != kNoVar) cp.add_row({{y, 1.0}, {below, -1.0}}, 0.0);
      below = y;
    }
  }
  cp.add_row(std::move(budget), 1.0);
  return cp;
}

struct ChainSolution {
  std::vector<double> u;
  double lower = 0.0;  // objective at u
  double upper = 0.0;  // dual bound
};

ChainSolution solve_dense(const ChainProgram& cp) {
  LinearProgram lp(cp.vars);
  lp.set_objective(cp.objective);
  for (std::size_t r = 0; r < cp.rows.size(); ++r) {
    lp.add_constraint(cp.rows[r], Relation::kLessEqual, cp.rhs[r]);
  }
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::kOptimal) {
    throw NumericalError(std::string("biased LP returned ") + to_string(res.status));
  }
  return {res.x, res.value, res.value};
}

ChainSolution solve_sparse(const ChainProgram& cp) {
  InequalityLp lp;
  lp.variables = cp.vars;
  lp.objective = cp.objective;
  for (std::size_t r = 0; r < cp.rows.size(); ++r) lp.add_row(cp.rows[r], cp.rhs[r]);
  for (std::size_t j = 0; j < cp.vars; ++j) {
    lp.add_row({{j, -1.0}}, 0.0);
    lp.add_row({{j, 1.0}}, cp.upper);
  }
  InteriorPointResult res = solve_interior_point(lp);
  std::vector<double> u = res.u;
  for (double& v : u) v = std::clamp(v, 0.0, cp.upper);
  return {u, res.primal_value, std::max(res.primal_value, res.dual_value)};
}

}  // namespace

std::vector<bool> forced_zero_set(const ElectionInstance& election, Candidate i_star) {
  const int m = election.candidate_count();
  std::vector<bool> zero(m, false);
  zero[i_star] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < election.block_count(); ++v) {
      int lowest = -1;
      for (int pos = m - 1; pos >= 0; --pos) {
        if (zero[election.at(v, pos)]) {
          lowest = pos;
          break;
        }
      }
      for (int pos = 0; pos < lowest; ++pos) {
        if (!zero[election.at(v, pos)]) {
          zero[election.at(v, pos)] = true;
          changed = true;
        }
      }
    }
  }
  return zero;
}

double biased_ratio_upper_bound(const ElectionInstance& election, const PairwiseMatrix& s,
                                const std::vector<double>& p, Candidate i_star) {
  // For J = I_t^c: l(t) / r(t) <= P(J) / (1 - min_{j in J} s_{i* > j}); the
  // worst J for a given minimum tau takes every j with s_{i* > j} >= tau.
  const int m = election.candidate_count();
  std::vector<std::pair<double, double>> by_margin;  // (s_{i*>j}, p_j)
  for (Candidate j = 0; j < m; ++j) {
    if (j != i_star) by_margin.push_back({s(i_star, j).get_d(), p[j]});
  }
  std::sort(by_margin.begin(), by_margin.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = 0.0, mass = 0.0;
  for (std::size_t k = 0; k < by_margin.size(); ++k) {
    mass += by_margin[k].second;
    if (k + 1 < by_margin.size() && by_margin[k + 1].first == by_margin[k].first) continue;
    if (mass <= 0.0) continue;
    const double room = 1.0 - by_margin[k].first;
    if (room <= 1e-15) return kInfinity;
    best = std::max(best, mass / room);
  }
  return 1.0 + 2.0 * best;
}

BiasedLpSolution solve_biased_lp(const ElectionInstance& election, const Distribution& d,
                                 Candidate i_star) {
  const std::vector<double>& p = d.probabilities();
  ChainProgram cp = build_chain_program(election, p, i_star);
  ChainSolution sol = cp.vars <= kDenseVariableLimit ? solve_dense(cp) : solve_sparse(cp);
  BiasedLpSolution out;
  out.x.i_star = i_star;
  out.x.x.assign(election.candidate_count(), 0.0);
  for (Candidate c = 0; c < election.candidate_count(); ++c) {
    if (cp.x_var[c] != kNoVar) out.x.x[c] = std::max(0.0, sol.u[cp.x_var[c]]);
  }
  out.ratio = biased_ratio(election, out.x, d);
  out.upper_bound = 1.0 + 2.0 * sol.upper;
  const double scale = std::max(1.0, out.upper_bound);
  if (!(out.ratio <= out.upper_bound + 1e-6 * scale) ||
      out.upper_bound - out.ratio > 1e-6 * scale) {
    throw NumericalError("biased LP optimum could not be certified: achieved " +
                         std::to_string(out.ratio) + ", bound " +
                         std::to_string(out.upper_bound));
  }
  return out;
}

}  // namespace metricvote
