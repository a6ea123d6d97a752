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

#include "metricvote/lp.hpp"

namespace metricvote {

namespace {

// maximize v subject to sum_i x_i a(i, j) >= v for every column j, x in the
// simplex. `a` is indexed as a(i, j) with i over the strategies of the
// maximizing player.
template <class Entry>
std::vector<double> maximin(std::size_t rows, std::size_t cols, Entry a, double& value) {
  LinearProgram lp(rows + 1);
  const std::size_t v = rows;
  lp.set_bounds(v, -kInfinity, kInfinity);
  lp.set_objective_coefficient(v, 1.0);
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<LpTerm> terms;
    for (std::size_t i = 0; i < rows; ++i) {
      const double e = a(i, j);
      if (e != 0.0) terms.push_back({i, e});
    }
    terms.push_back({v, -1.0});
    lp.add_constraint(std::move(terms), Relation::kGreaterEqual, 0.0);
  }
  std::vector<LpTerm> simplex;
  for (std::size_t i = 0; i < rows; ++i) simplex.push_back({i, 1.0});
  lp.add_constraint(std::move(simplex), Relation::kEqual, 1.0);
  LpResult res = solve_lp(lp);
  if (res.status != LpStatus::kOptimal) {
    throw NumericalError(std::string("zero-sum LP returned ") + to_string(res.status));
  }
  std::vector<double> x(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(rows));
  double total = 0.0;
  for (double& xi : x) {
    xi = std::max(0.0, xi);
    total += xi;
  }
  for (double& xi : x) xi /= total;
  value = res.x[v];
  return x;
}

}  // namespace

GameSolution solve_zero_sum(const std::vector<std::vector<double>>& payoff) {
  const std::size_t rows = payoff.size();
  if (rows == 0) throw std::invalid_argument("empty payoff matrix");
  const std::size_t cols = payoff.front().size();
  for (const auto& row : payoff) {
    if (row.size() != cols || cols == 0) throw std::invalid_argument("ragged payoff matrix");
    for (double e : row) {
      if (!std::isfinite(e)) throw std::invalid_argument("payoff entries must be finite");
    }
  }
  double row_value = 0.0, col_value = 0.0;
  std::vector<double> x =
      maximin(rows, cols, [&](std::size_t i, std::size_t j) { return payoff[i][j]; }, row_value);
  std::vector<double> y =
      maximin(cols, rows, [&](std::size_t j, std::size_t i) { return -payoff[i][j]; }, col_value);
  GameSolution out;
  out.value = (row_value - col_value) / 2.0;
  out.row_strategy = Distribution::approximate(std::move(x));
  out.col_strategy = Distribution::approximate(std::move(y));
  return out;
}

double equilibrium_gap(const std::vector<std::vector<double>>& payoff, const GameSolution& game) {
  const std::size_t rows = payoff.size();
  const std::size_t cols = payoff.front().size();
  std::vector<double> ay(rows, 0.0), xa(cols, 0.0);
  double xay = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double e = payoff[i][j];
      ay[i] += e * game.col_strategy[j];
      xa[j] += game.row_strategy[i] * e;
      xay += game.row_strategy[i] * e * game.col_strategy[j];
    }
  }
  const double row_gain = *std::max_element(ay.begin(), ay.end()) - xay;
  const double col_gain = xay - *std::min_element(xa.begin(), xa.end());
  return std::max(row_gain, col_gain);
}

}  // namespace metricvote
