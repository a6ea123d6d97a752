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

#ifndef METRICVOTE_LP_HPP
#define METRICVOTE_LP_HPP

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "metricvote/election.hpp"

namespace metricvote {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpTerm {
  std::size_t var;
  double coef;
};

// maximize c^T x subject to sparse rows and per-variable bounds
// (lower defaults to 0, upper to +inf; -inf lower makes a variable free).
class LinearProgram {
 public:
  struct Row {
    std::vector<LpTerm> terms;
    Relation relation;
    double bound;
  };

  explicit LinearProgram(std::size_t variables);

  std::size_t variable_count() const { return objective_.size(); }
  std::size_t constraint_count() const { return rows_.size(); }

  void set_objective(std::vector<double> c);
  void set_objective_coefficient(std::size_t var, double c);
  std::size_t add_constraint(const std::vector<double>& dense, Relation relation, double bound);
  std::size_t add_constraint(std::vector<LpTerm> terms, Relation relation, double bound);
  void set_bounds(std::size_t var, double lower, double upper = kInfinity);

  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Row>& rows() const { return rows_; }
  double lower(std::size_t var) const { return lower_[var]; }
  double upper(std::size_t var) const { return upper_[var]; }

 private:
  std::vector<double> objective_;
  std::vector<Row> rows_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> x;
  // One multiplier per constraint row; only set when OPTIMAL.
  std::vector<double> duals;
  std::size_t iterations = 0;
};

// Two-phase dense tableau simplex. Tall programs are solved through their
// dual. Optimal points are refined against the final basis and checked to
// 1e-9; NumericalError is thrown if the check fails.
LpResult solve_lp(const LinearProgram& lp);

// maximize c^T u subject to G u <= h, solved by a primal-dual interior point
// method. The feasible set must be bounded with a nonempty interior.
struct InequalityLp {
  std::size_t variables = 0;
  std::vector<double> objective;
  std::vector<std::vector<LpTerm>> rows;
  std::vector<double> bounds;

  std::size_t add_row(std::vector<LpTerm> terms, double bound) {
    rows.push_back(std::move(terms));
    bounds.push_back(bound);
    return rows.size() - 1;
  }
};

struct InteriorPointOptions {
  double tolerance = 1e-10;
  int max_iterations = 200;
};

struct InteriorPointResult {
  std::vector<double> u;
  std::vector<double> z;  // row multipliers
  double primal_value = 0.0;
  double dual_value = 0.0;  // h^T z
  double primal_residual = 0.0;  // max(0, G u - h), infinity norm
  double dual_residual = 0.0;    // |G^T z - c|, infinity norm
  int iterations = 0;
};

InteriorPointResult solve_interior_point(const InequalityLp& lp,
                                         const InteriorPointOptions& options = {});

// Two-player zero-sum game: the row player maximizes x^T A y.
struct GameSolution {
  double value = 0.0;
  Distribution row_strategy;
  Distribution col_strategy;
};

GameSolution solve_zero_sum(const std::vector<std::vector<double>>& payoff);

// Largest gain either player can get by a pure deviation from the returned
// strategies.
double equilibrium_gap(const std::vector<std::vector<double>>& payoff, const GameSolution& game);

}  // namespace metricvote

#endif  // METRICVOTE_LP_HPP
