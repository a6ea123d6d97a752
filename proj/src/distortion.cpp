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

#include "metricvote/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "metricvote/lp.hpp"

namespace metricvote {

const char* to_string(Formulation f) {
  switch (f) {
    case Formulation::kAuto:
      return "auto";
    case Formulation::kClosureLp:
      return "closure";
    case Formulation::kBiasedLp:
      return "biased";
  }
  return "?";
}

namespace {

// Probabilities below this are solver noise in LP-derived distributions.
constexpr double kNoiseProbability = 1e-12;

Distribution sanitize(const ElectionInstance& election, const Distribution& d) {
  if (static_cast<int>(d.size()) != election.candidate_count()) {
    throw ValidationError("distribution length does not match the candidate count");
  }
  if (d.is_exact()) return d;
  std::vector<double> p = d.probabilities();
  double total = 0.0;
  for (double& v : p) {
    if (!(v >= -kNoiseProbability)) throw ValidationError("negative probability");
    if (v < kNoiseProbability) v = 0.0;
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-6) throw ValidationError("probabilities do not sum to 1");
  for (double& v : p) v /= total;
  return Distribution::approximate(std::move(p));
}

struct ClosureSolution {
  double value = 0.0;
  bool unbounded = false;
  MetricSpace<double> d;
};

ClosureSolution solve_closure_lp(const ElectionInstance& election, const std::vector<double>& p,
                                 Candidate i_star) {
  const int m = election.candidate_count();
  const std::size_t k = election.block_count();
  auto var = [k](Candidate c, std::size_t v) { return static_cast<std::size_t>(c) * k + v; };
  LinearProgram lp(static_cast<std::size_t>(m) * k);
  for (Candidate c = 0; c < m; ++c) {
    for (std::size_t v = 0; v < k; ++v) {
      lp.set_objective_coefficient(var(c, v), p[c] * election.weight(v).get_d());
    }
  }
  for (std::size_t v = 0; v < k; ++v) {
    for (int pos = 0; pos + 1 < m; ++pos) {
      lp.add_constraint({{var(election.at(v, pos), v), 1.0}, {var(election.at(v, pos + 1), v), -1.0}},
                        Relation::kLessEqual, 0.0);
    }
  }
  for (Candidate i = 0; i < m; ++i) {
    for (Candidate j = 0; j < m; ++j) {
      if (i == j) continue;
      for (std::size_t u = 0; u < k; ++u) {
        for (std::size_t v = 0; v < k; ++v) {
          if (u == v) continue;
          lp.add_constraint(
              {{var(i, u), 1.0}, {var(i, v), -1.0}, {var(j, v), -1.0}, {var(j, u), -1.0}},
              Relation::kLessEqual, 0.0);
        }
      }
    }
  }
  std::vector<LpTerm> norm;
  for (std::size_t v = 0; v < k; ++v) norm.push_back({var(i_star, v), election.weight(v).get_d()});
  lp.add_constraint(std::move(norm), Relation::kEqual, 1.0);
  LpResult res = solve_lp(lp);
  ClosureSolution out;
  if (res.status == LpStatus::kUnbounded) {
    out.unbounded = true;
    return out;
  }
  if (res.status != LpStatus::kOptimal) {
    throw NumericalError(std::string("closure LP returned ") + to_string(res.status));
  }
  out.value = res.value;
  out.d = MetricSpace<double>(m, k);
  for (Candidate c = 0; c < m; ++c) {
    for (std::size_t v = 0; v < k; ++v) out.d(c, v) = res.x[var(c, v)];
  }
  return out;
}

double expected_cost(const std::vector<double>& costs, const std::vector<double>& p) {
  double e = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] > 0.0) e += p[j] * costs[j];
  }
  return e;
}

void finish_report(const ElectionInstance& election, DistortionReport& report) {
  report.per_candidate_costs = social_costs(election, report.witness_metric);
}

// Consistent metric with SC(i*) = 0 while some supported candidate has
// positive cost.
DistortionReport unbounded_report(const ElectionInstance& election, Candidate i_star,
                                  const std::vector<bool>& zero, Formulation f) {
  BiasedVector<double> x{i_star, std::vector<double>(election.candidate_count(), 0.0)};
  for (Candidate c = 0; c < election.candidate_count(); ++c) x.x[c] = zero[c] ? 0.0 : 1.0;
  DistortionReport report;
  report.value = kInfinity;
  report.witness_i_star = i_star;
  report.witness_metric = biased_metric(election, x);
  report.formulation = f;
  finish_report(election, report);
  return report;
}

}  // namespace

DistortionReport exact_distortion(const ElectionInstance& election, const Distribution& d,
                                  const DistortionOptions& options) {
  const Distribution dist = sanitize(election, d);
  const std::vector<double>& p = dist.probabilities();
  const int m = election.candidate_count();
  const std::size_t k = election.block_count();

  for (Candidate i = 0; i < m; ++i) {
    const std::vector<bool> zero = forced_zero_set(election, i);
    for (Candidate j = 0; j < m; ++j) {
      if (!zero[j] && p[j] > 0.0) {
        return unbounded_report(election, i, zero, options.formulation);
      }
    }
  }

  Formulation f = options.formulation;
  if (f == Formulation::kAuto) {
    const std::size_t rows = static_cast<std::size_t>(m) * (m - 1) * k * (k - 1);
    f = rows <= options.closure_row_limit ? Formulation::kClosureLp : Formulation::kBiasedLp;
  }

  DistortionReport report;
  report.formulation = f;
  report.value = -1.0;
  if (f == Formulation::kClosureLp) {
    for (Candidate i = 0; i < m; ++i) {
      ClosureSolution sol = solve_closure_lp(election, p, i);
      if (sol.unbounded) {
        throw NumericalError("closure LP unbounded although every supported candidate is bounded");
      }
      if (sol.value > report.value) {
        report.value = sol.value;
        report.witness_i_star = i;
        report.witness_metric = std::move(sol.d);
      }
    }
    finish_report(election, report);
    const double sc_star = report.per_candidate_costs[report.witness_i_star];
    const double ratio = expected_cost(report.per_candidate_costs, p) / sc_star;
    const double tol = 1e-7;
    if (std::abs(sc_star - 1.0) > tol || std::abs(ratio - report.value) > 1e-8 * report.value ||
        !is_consistent(election, report.witness_metric, tol) ||
        !satisfies_closure(report.witness_metric, tol)) {
      throw NumericalError("closure LP witness failed validation");
    }
  } else {
    const PairwiseMatrix s = pairwise_margins(election);
    std::vector<std::pair<double, Candidate>> order;
    for (Candidate i = 0; i < m; ++i) {
      order.push_back({biased_ratio_upper_bound(election, s, p, i), i});
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    BiasedVector<double> best_x;
    for (const auto& [bound, i] : order) {
      if (options.prune && report.value >= 1.0 && bound <= report.value + 1e-9) continue;
      BiasedLpSolution sol = solve_biased_lp(election, dist, i);
      if (sol.ratio > report.value) {
        report.value = sol.ratio;
        report.witness_i_star = i;
        best_x = sol.x;
      }
    }
    report.witness_metric = biased_metric(election, best_x);
    finish_report(election, report);
  }
  report.value = std::max(1.0, report.value);
  return report;
}

std::string format_report(const DistortionReport& report) {
  std::ostringstream os;
  os.precision(12);
  os << "value " << report.value << '\n';
  os << "i_star " << report.witness_i_star << '\n';
  os << "formulation " << to_string(report.formulation) << '\n';
  os << "costs";
  for (double c : report.per_candidate_costs) os << ' ' << c;
  os << '\n';
  os << "witness\n" << format_metric(report.witness_metric);
  return os.str();
}

namespace {

template <class Scalar>
Scalar ratio_from(const ElectionInstance& election, const BiasedVector<Scalar>& x,
                  const std::vector<Scalar>& p, bool& infinite) {
  const std::vector<Scalar> spread = voter_spreads(election, x);
  const int m = election.candidate_count();
  Scalar r = 0, l = 0;
  for (std::size_t v = 0; v < election.block_count(); ++v) {
    const Scalar w = from_rational<Scalar>(election.weight(v));
    r += w * spread[v];
    Scalar low = x.x[election.at(v, m - 1)];
    Scalar inner = 0;
    for (int pos = m - 1; pos >= 0; --pos) {
      const Candidate c = election.at(v, pos);
      if (x.x[c] < low) low = x.x[c];
      if (p[c] != 0) inner += p[c] * low;
    }
    l += w * inner;
  }
  infinite = false;
  if (r == 0) {
    infinite = l > 0;
    return Scalar(1);
  }
  return 1 + 2 * l / r;
}

}  // namespace

double biased_ratio(const ElectionInstance& election, const BiasedVector<double>& x,
                    const Distribution& d) {
  bool infinite = false;
  const double v = ratio_from(election, x, d.probabilities(), infinite);
  return infinite ? kInfinity : v;
}

Rational biased_ratio_exact(const ElectionInstance& election, const BiasedVector<Rational>& x,
                            const Distribution& d) {
  bool infinite = false;
  Rational v = ratio_from(election, x, probabilities_as<Rational>(d), infinite);
  if (infinite) throw ValidationError("biased ratio is unbounded (R = 0 < L)");
  return v;
}

std::vector<ConstraintViolation> fancy_constraints_check(const ElectionInstance& election,
                                                         const Distribution& d, double lambda,
                                                         double tol) {
  const int m = election.candidate_count();
  if (m > 15) throw ValidationError("subset enumeration is capped at 15 candidates");
  const std::vector<double>& p = d.probabilities();
  std::vector<ConstraintViolation> out;
  const unsigned full = (1u << m) - 1u;
  for (unsigned mask = 1; mask < full; ++mask) {
    double lhs = 0.0;
    for (std::size_t v = 0; v < election.block_count(); ++v) {
      const double w = election.weight(v).get_d();
      // j counts when every member of I is ranked above it.
      for (int pos = m - 1; pos >= 0; --pos) {
        const Candidate c = election.at(v, pos);
        if (mask >> c & 1u) break;
        lhs += w * p[c];
      }
    }
    for (Candidate i = 0; i < m; ++i) {
      if (!(mask >> i & 1u)) continue;
      double above_complement = 0.0;
      for (std::size_t v = 0; v < election.block_count(); ++v) {
        bool ok = true;
        for (int pos = 0; pos < election.position(v, i); ++pos) {
          if (!(mask >> election.at(v, pos) & 1u)) {
            ok = false;
            break;
          }
        }
        if (ok) above_complement += election.weight(v).get_d();
      }
      const double rhs = lambda * (1.0 - above_complement);
      if (lhs > rhs + tol) {
        ConstraintViolation cv{{}, i, lhs, rhs};
        for (Candidate c = 0; c < m; ++c) {
          if (mask >> c & 1u) cv.subset.push_back(c);
        }
        out.push_back(std::move(cv));
      }
    }
  }
  return out;
}

BiasedSearchResult search_worst_biased(const ElectionInstance& election, const Distribution& d,
                                       std::size_t budget, std::uint64_t seed) {
  const Distribution dist = sanitize(election, d);
  const int m = election.candidate_count();
  BiasedSearchResult best;
  best.x = {0, std::vector<double>(m, 0.0)};
  best.ratio = 1.0;
  if (m == 1) return best;
  std::mt19937_64 rng(seed);

  auto evaluate = [&](const BiasedVector<double>& x) {
    ++best.evaluations;
    const double r = biased_ratio(election, x, dist);
    if (r > best.ratio) {
      best.ratio = r;
      best.x = x;
    }
    return r;
  };

  const std::size_t share = std::max<std::size_t>(1, budget / 2 / static_cast<std::size_t>(m));
  // Largest grid {0..levels}^(m-1) that fits each candidate's share.
  std::size_t levels = 0;
  for (std::size_t l = 1;; ++l) {
    double size = std::pow(static_cast<double>(l + 1), m - 1);
    if (size > static_cast<double>(share)) break;
    levels = l;
  }

  std::vector<BiasedVector<double>> seeds;
  for (Candidate i = 0; i < m; ++i) {
    BiasedVector<double> local_best{i, std::vector<double>(m, 2.0)};
    local_best.x[i] = 0.0;
    double local_ratio = evaluate(local_best);
    if (levels >= 1) {
      std::vector<int> digits(m, 0);
      for (;;) {
        int c = 0;
        while (c < m) {
          if (c == i) {
            ++c;
            continue;
          }
          if (++digits[c] <= static_cast<int>(levels)) break;
          digits[c] = 0;
          ++c;
        }
        if (c == m) break;
        BiasedVector<double> x{i, std::vector<double>(m, 0.0)};
        for (Candidate j = 0; j < m; ++j) x.x[j] = j == i ? 0.0 : static_cast<double>(digits[j]);
        const double r = evaluate(x);
        if (r > local_ratio) {
          local_ratio = r;
          local_best = x;
        }
      }
    } else {
      // Random two-level starts, each improved by single flips.
      std::bernoulli_distribution coin(0.5);
      std::size_t used = 0;
      while (used < share) {
        BiasedVector<double> x{i, std::vector<double>(m, 0.0)};
        for (Candidate j = 0; j < m; ++j) x.x[j] = (j != i && coin(rng)) ? 2.0 : 0.0;
        double r = evaluate(x);
        ++used;
        for (bool improved = true; improved && used < share;) {
          improved = false;
          for (Candidate j = 0; j < m && used < share; ++j) {
            if (j == i) continue;
            x.x[j] = 2.0 - x.x[j];
            const double r2 = evaluate(x);
            ++used;
            if (r2 > r) {
              r = r2;
              improved = true;
            } else {
              x.x[j] = 2.0 - x.x[j];
            }
          }
        }
        if (r > local_ratio) {
          local_ratio = r;
          local_best = x;
        }
      }
    }
    seeds.push_back(local_best);
  }

  // Coordinate refinement from the best start of each reference candidate.
  std::sort(seeds.begin(), seeds.end(), [&](const auto& a, const auto& b) {
    return biased_ratio(election, a, dist) > biased_ratio(election, b, dist);
  });
  for (BiasedVector<double> x : seeds) {
    if (best.evaluations >= budget) break;
    double r = biased_ratio(election, x, dist);
    for (bool improved = true; improved && best.evaluations < budget;) {
      improved = false;
      std::vector<double> values(x.x);
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      std::vector<double> trial_values(values);
      for (std::size_t q = 0; q + 1 < values.size(); ++q) {
        trial_values.push_back((values[q] + values[q + 1]) / 2.0);
      }
      trial_values.push_back(values.back() * 1.5 + 1.0);
      for (Candidate j = 0; j < m && best.evaluations < budget; ++j) {
        if (j == x.i_star) continue;
        const double keep = x.x[j];
        double best_value = keep;
        for (double t : trial_values) {
          if (t == keep || best.evaluations >= budget) continue;
          x.x[j] = t;
          const double r2 = evaluate(x);
          if (r2 > r + 1e-15) {
            r = r2;
            best_value = t;
            improved = true;
          }
        }
        x.x[j] = best_value;
      }
    }
  }
  return best;
}

bool ml_pointwise_check(const ElectionInstance& election, const BiasedVector<double>& x,
                        const Distribution& ml, double tol) {
  const std::vector<double>& p = ml.probabilities();
  const StepFunction<double> ell = ell_curve(election, x, p);
  const StepFunction<double> r = r_curve(election, x);
  std::vector<double> points(ell.breakpoints());
  points.insert(points.end(), r.breakpoints().begin(), r.breakpoints().end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (double t : points) {
    double outside = 0.0;
    for (Candidate j = 0; j < election.candidate_count(); ++j) {
      if (x.x[j] > t) outside += p[j];
    }
    if (ell(t) > outside / 2.0 + tol || outside / 2.0 > r(t) + tol) return false;
  }
  return true;
}

}  // namespace metricvote
