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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "metricvote/lp.hpp"

namespace metricvote {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "OPTIMAL";
    case LpStatus::kInfeasible:
      return "INFEASIBLE";
    case LpStatus::kUnbounded:
      return "UNBOUNDED";
  }
  return "?";
}

LinearProgram::LinearProgram(std::size_t variables)
    : objective_(variables, 0.0), lower_(variables, 0.0), upper_(variables, kInfinity) {}

void LinearProgram::set_objective(std::vector<double> c) {
  if (c.size() != objective_.size()) throw std::invalid_argument("objective has the wrong length");
  objective_ = std::move(c);
}

void LinearProgram::set_objective_coefficient(std::size_t var, double c) {
  objective_.at(var) = c;
}

std::size_t LinearProgram::add_constraint(const std::vector<double>& dense, Relation relation,
                                          double bound) {
  if (dense.size() != objective_.size()) {
    throw std::invalid_argument("constraint has the wrong length");
  }
  std::vector<LpTerm> terms;
  for (std::size_t j = 0; j < dense.size(); ++j) {
    if (dense[j] != 0.0) terms.push_back({j, dense[j]});
  }
  return add_constraint(std::move(terms), relation, bound);
}

std::size_t LinearProgram::add_constraint(std::vector<LpTerm> terms, Relation relation,
                                          double bound) {
  for (const LpTerm& t : terms) {
    if (t.var >= objective_.size()) throw std::invalid_argument("constraint names unknown variable");
    if (!std::isfinite(t.coef)) throw std::invalid_argument("constraint coefficient is not finite");
  }
  if (!std::isfinite(bound)) throw std::invalid_argument("constraint bound is not finite");
  rows_.push_back({std::move(terms), relation, bound});
  return rows_.size() - 1;
}

void LinearProgram::set_bounds(std::size_t var, double lower, double upper) {
  if (lower > upper || lower == kInfinity || upper == -kInfinity) {
    throw std::invalid_argument("empty variable bounds");
  }
  lower_.at(var) = lower;
  upper_.at(var) = upper;
}

namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kCostTolerance = 1e-9;
constexpr double kFeasibilityTolerance = 1e-9;
constexpr int kDegenerateStreakForBland = 40;

// max c^T y subject to rows (A y rel b) and y >= 0.
struct Canonical {
  std::size_t n = 0;
  std::vector<double> c;
  std::vector<std::vector<LpTerm>> a;
  std::vector<Relation> rel;
  std::vector<double> b;
};

struct CoreResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> y;
  std::vector<double> pi;  // >= 0 on <= rows, <= 0 on >= rows at a maximum
  std::size_t iterations = 0;
};

Relation flipped(Relation r) {
  if (r == Relation::kLessEqual) return Relation::kGreaterEqual;
  if (r == Relation::kGreaterEqual) return Relation::kLessEqual;
  return r;
}

class Tableau {
 public:
  explicit Tableau(const Canonical& p) : p_(p), rows_(p.a.size()) {
    flip_.assign(rows_, false);
    std::size_t col = p.n;
    slack_col_.assign(rows_, kNone);
    art_col_.assign(rows_, kNone);
    rel_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      flip_[i] = p.b[i] < 0;
      rel_[i] = flip_[i] ? flipped(p.rel[i]) : p.rel[i];
      if (rel_[i] != Relation::kEqual) slack_col_[i] = col++;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (rel_[i] != Relation::kLessEqual) art_col_[i] = col++;
    }
    width_ = col;
    first_art_ = p.n;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (slack_col_[i] != kNone) first_art_ = std::max(first_art_, slack_col_[i] + 1);
    }
    t_.assign(rows_ * stride(), 0.0);
    basic_.assign(rows_, kNone);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double sign = flip_[i] ? -1.0 : 1.0;
      for (const LpTerm& term : p.a[i]) at(i, term.var) += sign * term.coef;
      if (slack_col_[i] != kNone) {
        at(i, slack_col_[i]) = rel_[i] == Relation::kLessEqual ? 1.0 : -1.0;
      }
      if (art_col_[i] != kNone) at(i, art_col_[i]) = 1.0;
      rhs(i) = sign * p.b[i];
      basic_[i] = rel_[i] == Relation::kLessEqual ? slack_col_[i] : art_col_[i];
    }
    redundant_.assign(rows_, false);
  }

  CoreResult solve() {
    CoreResult out;
    double b_scale = 1.0;
    for (double v : p_.b) b_scale = std::max(b_scale, std::abs(v));
    max_iterations_ = 200 * (rows_ + width_) + 1000;

    bool any_artificial = false;
    std::vector<double> phase1(width_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (art_col_[i] != kNone) {
        phase1[art_col_[i]] = -1.0;
        any_artificial = true;
      }
    }
    if (any_artificial) {
      run_phase(phase1, /*bar_artificial=*/false);
      double infeasibility = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (is_artificial(basic_[i])) infeasibility += rhs(i);
      }
      if (infeasibility > kFeasibilityTolerance * b_scale) {
        out.status = LpStatus::kInfeasible;
        out.iterations = iterations_;
        return out;
      }
      drive_out_artificials();
    }
    std::vector<double> phase2(width_, 0.0);
    for (std::size_t j = 0; j < p_.n; ++j) phase2[j] = p_.c[j];
    if (!run_phase(phase2, /*bar_artificial=*/true)) {
      out.status = LpStatus::kUnbounded;
      out.iterations = iterations_;
      return out;
    }
    out.status = LpStatus::kOptimal;
    out.iterations = iterations_;
    refine(phase2, out);
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t stride() const { return width_ + 1; }
  double& at(std::size_t i, std::size_t j) { return t_[i * stride() + j]; }
  double& rhs(std::size_t i) { return t_[i * stride() + width_]; }
  bool is_artificial(std::size_t j) const { return j >= first_art_ && j < width_; }

  void pivot(std::size_t pr, std::size_t pc, std::vector<double>& d) {
    double* prow = &t_[pr * stride()];
    const double inv = 1.0 / prow[pc];
    nz_.clear();
    for (std::size_t j = 0; j <= width_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        nz_.push_back(j);
      }
    }
    prow[pc] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == pr) continue;
      double* row = &t_[i * stride()];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t j : nz_) row[j] -= f * prow[j];
      row[pc] = 0.0;
      if (std::abs(row[width_]) < 1e-13) row[width_] = std::max(0.0, row[width_]);
    }
    const double f = d[pc];
    if (f != 0.0) {
      for (std::size_t j : nz_) d[j] -= f * prow[j];
      d[pc] = 0.0;
    }
    basic_[pr] = pc;
    ++iterations_;
    if (iterations_ > max_iterations_) throw NumericalError("simplex iteration limit reached");
  }

  std::vector<double> reduced_costs(const std::vector<double>& cost) {
    std::vector<double> d(cost.begin(), cost.end());
    d.push_back(0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = cost[basic_[i]];
      if (cb == 0.0) continue;
      const double* row = &t_[i * stride()];
      for (std::size_t j = 0; j <= width_; ++j) d[j] -= cb * row[j];
    }
    return d;
  }

  // Returns false when the objective is unbounded.
  bool run_phase(const std::vector<double>& cost, bool bar_artificial) {
    std::vector<double> d = reduced_costs(cost);
    std::vector<char> is_basic(width_, 0);
    for (std::size_t i = 0; i < rows_; ++i) is_basic[basic_[i]] = 1;
    int degenerate_streak = 0;
    for (;;) {
      const bool bland = degenerate_streak >= kDegenerateStreakForBland;
      std::size_t pc = kNone;
      double best = kCostTolerance;
      for (std::size_t j = 0; j < width_; ++j) {
        if (is_basic[j] || (bar_artificial && is_artificial(j))) continue;
        if (d[j] > best) {
          pc = j;
          if (bland) break;
          best = d[j];
        }
      }
      if (pc == kNone) return true;
      std::size_t pr = kNone;
      double best_ratio = kInfinity;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = at(i, pc);
        if (a <= kPivotTolerance) continue;
        const double ratio = std::max(0.0, rhs(i)) / a;
        const bool better = pr == kNone || ratio < best_ratio - 1e-12;
        const bool tie = !better && ratio <= best_ratio + 1e-12 && basic_[i] < basic_[pr];
        if (better || tie) {
          best_ratio = better ? ratio : std::min(best_ratio, ratio);
          pr = i;
        }
      }
      if (pr == kNone) return false;
      degenerate_streak = best_ratio <= 1e-12 ? degenerate_streak + 1 : 0;
      is_basic[basic_[pr]] = 0;
      is_basic[pc] = 1;
      pivot(pr, pc, d);
    }
  }

  void drive_out_artificials() {
    std::vector<double> dummy(width_ + 1, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!is_artificial(basic_[i])) continue;
      std::size_t pc = kNone;
      double best = kPivotTolerance;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (std::abs(at(i, j)) > best) {
          best = std::abs(at(i, j));
          pc = j;
        }
      }
      if (pc == kNone) {
        redundant_[i] = true;
      } else {
        pivot(i, pc, dummy);
      }
    }
  }

  // Column j of the (row-flipped) standard-form matrix, restricted to row i.
  double standard_entry(std::size_t i, std::size_t j) const {
    if (j < p_.n) return 0.0;  // structural entries are read from the sparse rows
    if (j == slack_col_[i]) return rel_[i] == Relation::kLessEqual ? 1.0 : -1.0;
    if (j == art_col_[i]) return 1.0;
    return 0.0;
  }

  void refine(const std::vector<double>& cost, CoreResult& out) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!redundant_[i]) active.push_back(i);
    }
    const std::size_t r = active.size();
    std::vector<std::size_t> local(width_, kNone);
    for (std::size_t k = 0; k < r; ++k) local[basic_[active[k]]] = k;
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(r, r);
    Eigen::VectorXd b(r), cb(r);
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t i = active[k];
      const double sign = flip_[i] ? -1.0 : 1.0;
      for (const LpTerm& term : p_.a[i]) {
        if (local[term.var] != kNone) basis(k, local[term.var]) += sign * term.coef;
      }
      for (std::size_t kk = 0; kk < r; ++kk) {
        const std::size_t j = basic_[active[kk]];
        if (j >= p_.n) basis(k, kk) = standard_entry(i, j);
      }
      b(k) = sign * p_.b[i];
      cb(k) = cost[basic_[i]];
    }
    out.y.assign(p_.n, 0.0);
    out.pi.assign(rows_, 0.0);
    if (r == 0) return;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
    Eigen::VectorXd xb = lu.solve(b);
    Eigen::VectorXd pi = lu.transpose().solve(cb);
    const double residual = (basis * xb - b).lpNorm<Eigen::Infinity>();
    if (!xb.allFinite() || !pi.allFinite() ||
        residual > 1e-8 * std::max(1.0, b.lpNorm<Eigen::Infinity>())) {
      // Singular refit: fall back to the tableau values.
      for (std::size_t k = 0; k < r; ++k) xb(k) = rhs(active[k]);
      pi.setZero();
      std::vector<double> d = reduced_costs(cost);
      for (std::size_t k = 0; k < r; ++k) {
        const std::size_t i = active[k];
        if (slack_col_[i] != kNone) {
          pi(k) = -d[slack_col_[i]] * (rel_[i] == Relation::kLessEqual ? 1.0 : -1.0);
        } else {
          pi(k) = -d[art_col_[i]];
        }
      }
    }
    for (std::size_t k = 0; k < r; ++k) {
      const std::size_t j = basic_[active[k]];
      if (j < p_.n) out.y[j] = std::max(0.0, xb(k));
      const std::size_t i = active[k];
      out.pi[i] = flip_[i] ? -pi(k) : pi(k);
    }
  }

  const Canonical& p_;
  std::size_t rows_;
  std::size_t width_ = 0;
  std::size_t first_art_ = 0;
  std::vector<bool> flip_;
  std::vector<Relation> rel_;
  std::vector<std::size_t> slack_col_;
  std::vector<std::size_t> art_col_;
  std::vector<double> t_;
  std::vector<std::size_t> basic_;
  std::vector<bool> redundant_;
  std::vector<std::size_t> nz_;
  std::size_t iterations_ = 0;
  std::size_t max_iterations_ = 0;
};

// x_j = offset_j + sum of sign * y_col over its columns.
struct VariableMap {
  double offset = 0.0;
  std::vector<std::pair<std::size_t, double>> columns;
};

struct Canonicalized {
  Canonical p;
  std::vector<VariableMap> vars;
  std::vector<std::size_t> source_row;  // original row, or npos for bound rows
  double objective_offset = 0.0;
};

constexpr std::size_t kBoundRow = static_cast<std::size_t>(-1);

Canonicalized canonicalize(const LinearProgram& lp) {
  Canonicalized out;
  const std::size_t n = lp.variable_count();
  out.vars.resize(n);
  std::vector<std::tuple<std::size_t, double>> upper_rows;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = lp.lower(j);
    const double hi = lp.upper(j);
    VariableMap& vm = out.vars[j];
    if (std::isfinite(lo)) {
      vm.offset = lo;
      vm.columns.push_back({out.p.n++, 1.0});
      if (std::isfinite(hi)) upper_rows.emplace_back(j, hi - lo);
    } else if (std::isfinite(hi)) {
      vm.offset = hi;
      vm.columns.push_back({out.p.n++, -1.0});
    } else {
      vm.columns.push_back({out.p.n++, 1.0});
      vm.columns.push_back({out.p.n++, -1.0});
    }
  }
  out.p.c.assign(out.p.n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double cj = lp.objective()[j];
    out.objective_offset += cj * out.vars[j].offset;
    for (auto [col, sign] : out.vars[j].columns) out.p.c[col] += sign * cj;
  }
  for (std::size_t r = 0; r < lp.constraint_count(); ++r) {
    const auto& row = lp.rows()[r];
    std::vector<LpTerm> terms;
    double b = row.bound;
    for (const LpTerm& t : row.terms) {
      b -= t.coef * out.vars[t.var].offset;
      for (auto [col, sign] : out.vars[t.var].columns) terms.push_back({col, sign * t.coef});
    }
    out.p.a.push_back(std::move(terms));
    out.p.rel.push_back(row.relation);
    out.p.b.push_back(b);
    out.source_row.push_back(r);
  }
  for (auto [j, width] : upper_rows) {
    out.p.a.push_back({{out.vars[j].columns.front().first, 1.0}});
    out.p.rel.push_back(Relation::kLessEqual);
    out.p.b.push_back(width);
    out.source_row.push_back(kBoundRow);
  }
  return out;
}

// Dual of max c^T y, A y rel b, y >= 0, written again as a maximization over
// nonnegative variables: pi_i = sigma_i * w_i (or w+ - w- on equality rows).
struct DualProgram {
  Canonical d;
  std::vector<std::vector<std::pair<std::size_t, double>>> pi_of_row;
};

DualProgram dualize(const Canonical& p) {
  DualProgram out;
  out.pi_of_row.resize(p.a.size());
  std::vector<std::vector<LpTerm>> columns(p.n);
  std::size_t w = 0;
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    std::vector<std::pair<std::size_t, double>> parts;
    if (p.rel[i] == Relation::kLessEqual) {
      parts.push_back({w++, 1.0});
    } else if (p.rel[i] == Relation::kGreaterEqual) {
      parts.push_back({w++, -1.0});
    } else {
      parts.push_back({w++, 1.0});
      parts.push_back({w++, -1.0});
    }
    for (auto [col, sigma] : parts) {
      out.d.c.push_back(-sigma * p.b[i]);
      for (const LpTerm& t : p.a[i]) columns[t.var].push_back({col, sigma * t.coef});
    }
    out.pi_of_row[i] = std::move(parts);
  }
  out.d.n = w;
  for (std::size_t j = 0; j < p.n; ++j) {
    out.d.a.push_back(std::move(columns[j]));
    out.d.rel.push_back(Relation::kGreaterEqual);
    out.d.b.push_back(p.c[j]);
  }
  return out;
}

CoreResult solve_core(const Canonical& p) { return Tableau(p).solve(); }

CoreResult solve_through_dual(const Canonical& p) {
  DualProgram dual = dualize(p);
  CoreResult dr = solve_core(dual.d);
  CoreResult out;
  out.iterations = dr.iterations;
  if (dr.status == LpStatus::kUnbounded) {
    out.status = LpStatus::kInfeasible;
    return out;
  }
  if (dr.status == LpStatus::kInfeasible) {
    // The primal is unbounded or infeasible; let the primal route decide.
    CoreResult pr = solve_core(p);
    pr.iterations += out.iterations;
    return pr;
  }
  out.status = LpStatus::kOptimal;
  out.y.resize(p.n);
  for (std::size_t j = 0; j < p.n; ++j) out.y[j] = std::max(0.0, -dr.pi[j]);
  out.pi.assign(p.a.size(), 0.0);
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    for (auto [col, sigma] : dual.pi_of_row[i]) out.pi[i] += sigma * dr.y[col];
  }
  return out;
}

double row_violation(const LinearProgram::Row& row, const std::vector<double>& x) {
  double lhs = 0.0, scale = std::max(1.0, std::abs(row.bound));
  for (const LpTerm& t : row.terms) {
    lhs += t.coef * x[t.var];
    scale = std::max(scale, std::abs(t.coef * x[t.var]));
  }
  double excess = 0.0;
  switch (row.relation) {
    case Relation::kLessEqual:
      excess = lhs - row.bound;
      break;
    case Relation::kGreaterEqual:
      excess = row.bound - lhs;
      break;
    case Relation::kEqual:
      excess = std::abs(lhs - row.bound);
      break;
  }
  return excess / scale;
}

bool assemble(const LinearProgram& lp, const Canonicalized& cz, const CoreResult& core,
              LpResult& out) {
  const std::size_t n = lp.variable_count();
  out.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double v = cz.vars[j].offset;
    for (auto [col, sign] : cz.vars[j].columns) v += sign * core.y[col];
    out.x[j] = std::clamp(v, lp.lower(j), lp.upper(j));
  }
  for (const auto& row : lp.rows()) {
    if (row_violation(row, out.x) > kFeasibilityTolerance) return false;
  }
  out.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.value += lp.objective()[j] * out.x[j];
  out.duals.assign(lp.constraint_count(), 0.0);
  for (std::size_t i = 0; i < cz.source_row.size(); ++i) {
    if (cz.source_row[i] != kBoundRow) out.duals[cz.source_row[i]] = core.pi[i];
  }
  return true;
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  Canonicalized cz = canonicalize(lp);
  const bool tall = cz.p.a.size() > 2 * cz.p.n;
  LpResult out;
  CoreResult core = tall ? solve_through_dual(cz.p) : solve_core(cz.p);
  out.status = core.status;
  out.iterations = core.iterations;
  if (core.status != LpStatus::kOptimal) return out;
  if (assemble(lp, cz, core, out)) return out;
  if (tall) {
    core = solve_core(cz.p);
    out.status = core.status;
    out.iterations += core.iterations;
    if (core.status != LpStatus::kOptimal) return out;
    if (assemble(lp, cz, core, out)) return out;
  }
  throw NumericalError("simplex solution fails the feasibility check");
}

}  // namespace metricvote
