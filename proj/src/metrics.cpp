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

#include "metricvote/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace metricvote {

namespace {

constexpr double kMergeTolerance = 1e-12;

bool same_value(const Rational& a, const Rational& b) { return a == b; }
bool same_value(double a, double b) {
  return std::abs(a - b) <= kMergeTolerance * std::max(1.0, std::abs(a));
}

// Sorted representatives of `values`, merging near-equal doubles.
template <class Scalar>
std::vector<Scalar> distinct_sorted(std::vector<Scalar> values) {
  std::sort(values.begin(), values.end());
  std::vector<Scalar> out;
  for (const Scalar& v : values) {
    if (out.empty() || !same_value(out.back(), v)) out.push_back(v);
  }
  return out;
}

// Index of the representative equal to v.
template <class Scalar>
std::size_t group_of(const std::vector<Scalar>& reps, const Scalar& v) {
  auto it = std::lower_bound(reps.begin(), reps.end(), v);
  if (it != reps.end() && same_value(*it, v)) return static_cast<std::size_t>(it - reps.begin());
  if (it != reps.begin() && same_value(*(it - 1), v)) {
    return static_cast<std::size_t>(it - reps.begin()) - 1;
  }
  return static_cast<std::size_t>(it - reps.begin());
}

template <class Scalar>
void check_dimensions(const ElectionInstance& election, const MetricSpace<Scalar>& d) {
  if (d.candidate_count() != election.candidate_count() ||
      d.block_count() != election.block_count()) {
    throw ValidationError("metric dimensions do not match the election");
  }
}

template <class Scalar>
void check_vector(const ElectionInstance& election, const BiasedVector<Scalar>& x) {
  x.validate();
  if (static_cast<int>(x.x.size()) != election.candidate_count()) {
    throw ValidationError("biased vector length does not match the candidate count");
  }
}

}  // namespace

template <class Scalar>
void BiasedVector<Scalar>::validate() const {
  if (i_star < 0 || static_cast<std::size_t>(i_star) >= x.size()) {
    throw ValidationError("i* is not a candidate");
  }
  if (x[i_star] != 0) throw ValidationError("biased vector must vanish at i*");
  for (const Scalar& v : x) {
    if (v < 0) throw ValidationError("biased vector entries must be nonnegative");
  }
}

template <class Scalar>
StepFunction<Scalar>::StepFunction(std::vector<Scalar> breakpoints, std::vector<Scalar> levels)
    : breakpoints_(std::move(breakpoints)), levels_(std::move(levels)), integral_(0) {
  if (breakpoints_.empty() || breakpoints_.front() != 0 ||
      levels_.size() + 1 != breakpoints_.size()) {
    throw std::invalid_argument("malformed step function");
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw std::invalid_argument("step function breakpoints must increase");
    }
    integral_ += levels_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
  }
}

template <class Scalar>
Scalar StepFunction<Scalar>::operator()(const Scalar& t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.begin()) return levels_.empty() ? Scalar(0) : levels_.front();
  std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return i < levels_.size() ? levels_[i] : Scalar(0);
}

template <class Scalar>
Scalar social_cost(const ElectionInstance& election, const MetricSpace<Scalar>& d, Candidate i) {
  check_dimensions(election, d);
  Scalar sc = 0;
  for (std::size_t v = 0; v < election.block_count(); ++v) {
    sc += from_rational<Scalar>(election.weight(v)) * d(i, v);
  }
  return sc;
}

template <class Scalar>
std::vector<Scalar> social_costs(const ElectionInstance& election, const MetricSpace<Scalar>& d) {
  std::vector<Scalar> out;
  for (Candidate i = 0; i < election.candidate_count(); ++i) {
    out.push_back(social_cost(election, d, i));
  }
  return out;
}

template <class Scalar>
bool is_consistent(const ElectionInstance& election, const MetricSpace<Scalar>& d,
                   const Scalar& tol) {
  check_dimensions(election, d);
  for (std::size_t v = 0; v < election.block_count(); ++v) {
    for (int pos = 0; pos + 1 < election.candidate_count(); ++pos) {
      if (d(election.at(v, pos), v) > d(election.at(v, pos + 1), v) + tol) return false;
    }
  }
  for (Candidate c = 0; c < d.candidate_count(); ++c) {
    for (std::size_t v = 0; v < d.block_count(); ++v) {
      if (d(c, v) < -tol) return false;
    }
  }
  return true;
}

template <class Scalar>
bool satisfies_closure(const MetricSpace<Scalar>& d, const Scalar& tol) {
  const int m = d.candidate_count();
  const std::size_t k = d.block_count();
  for (Candidate i = 0; i < m; ++i) {
    for (Candidate j = 0; j < m; ++j) {
      if (i == j) continue;
      for (std::size_t u = 0; u < k; ++u) {
        for (std::size_t v = 0; v < k; ++v) {
          if (u != v && d(i, u) > d(i, v) + d(j, v) + d(j, u) + tol) return false;
        }
      }
    }
  }
  return true;
}

template <class Scalar>
std::vector<Scalar> voter_spreads(const ElectionInstance& election, const BiasedVector<Scalar>& x) {
  check_vector(election, x);
  std::vector<Scalar> spread(election.block_count());
  for (std::size_t v = 0; v < election.block_count(); ++v) {
    Scalar best_above = x.x[election.at(v, 0)];
    Scalar gap = 0;
    for (int pos = 1; pos < election.candidate_count(); ++pos) {
      const Scalar& xc = x.x[election.at(v, pos)];
      if (best_above - xc > gap) gap = best_above - xc;
      if (xc > best_above) best_above = xc;
    }
    spread[v] = gap;
  }
  return spread;
}

template <class Scalar>
MetricSpace<Scalar> biased_metric(const ElectionInstance& election, const BiasedVector<Scalar>& x) {
  const std::vector<Scalar> spread = voter_spreads(election, x);
  const int m = election.candidate_count();
  MetricSpace<Scalar> d(m, election.block_count());
  for (std::size_t v = 0; v < election.block_count(); ++v) {
    const Scalar base = spread[v] / 2;
    d(x.i_star, v) = base;
    // Suffix minimum of x along v's ranking.
    Scalar low = x.x[election.at(v, m - 1)];
    for (int pos = m - 1; pos >= 0; --pos) {
      Candidate c = election.at(v, pos);
      if (x.x[c] < low) low = x.x[c];
      if (c != x.i_star) d(c, v) = base + low;
    }
  }
  return d;
}

template <class Scalar>
StepFunction<Scalar> r_curve(const ElectionInstance& election, const BiasedVector<Scalar>& x) {
  const std::vector<Scalar> spread = voter_spreads(election, x);
  std::vector<Scalar> points(spread);
  points.push_back(Scalar(0));
  std::vector<Scalar> breakpoints = distinct_sorted(points);
  std::vector<Scalar> levels(breakpoints.size() - 1, Scalar(0));
  for (std::size_t v = 0; v < spread.size(); ++v) {
    std::size_t g = group_of(breakpoints, spread[v]);
    const Scalar w = from_rational<Scalar>(election.weight(v));
    for (std::size_t i = 0; i < g; ++i) levels[i] += w;
  }
  return StepFunction<Scalar>(std::move(breakpoints), std::move(levels));
}

template <class Scalar>
StepFunction<Scalar> ell_curve(const ElectionInstance& election, const BiasedVector<Scalar>& x,
                               const std::vector<Scalar>& p) {
  check_vector(election, x);
  const int m = election.candidate_count();
  if (static_cast<int>(p.size()) != m) {
    throw ValidationError("distribution length does not match the candidate count");
  }
  std::vector<Scalar> breakpoints = distinct_sorted(x.x);
  std::vector<std::size_t> group(m);
  for (Candidate c = 0; c < m; ++c) group[c] = group_of(breakpoints, x.x[c]);
  std::vector<Scalar> levels(breakpoints.size() - 1, Scalar(0));
  for (std::size_t g = 0; g + 1 < breakpoints.size(); ++g) {
    // I_t = {c : group[c] <= g}; s_{I > j} counts voters ranking every
    // member of I above j, i.e. j below the lowest member.
    Scalar level = 0;
    for (std::size_t v = 0; v < election.block_count(); ++v) {
      const Scalar w = from_rational<Scalar>(election.weight(v));
      for (int pos = m - 1; pos >= 0; --pos) {
        Candidate c = election.at(v, pos);
        if (group[c] <= g) break;
        level += w * p[c];
      }
    }
    levels[g] = level;
  }
  return StepFunction<Scalar>(std::move(breakpoints), std::move(levels));
}

template <>
std::vector<double> probabilities_as<double>(const Distribution& d) {
  return d.probabilities();
}

template <>
std::vector<Rational> probabilities_as<Rational>(const Distribution& d) {
  if (!d.is_exact()) throw ValidationError("exact arithmetic needs an exact distribution");
  return d.exact_probabilities();
}

template <class Scalar>
Scalar alpha_of_beta(const ElectionInstance& election, const BiasedVector<Scalar>& x,
                     const Scalar& beta) {
  StepFunction<Scalar> r = r_curve(election, x);
  if (r.integral() == 0) throw ValidationError("alpha(beta) is undefined when R = 0");
  const auto& levels = r.levels();
  std::size_t i = 0;
  while (i < levels.size() && !(levels[i] < beta)) ++i;
  return r.breakpoints()[i] / r.integral();
}

template <class Scalar>
bool check_ab_consistent(const ElectionInstance& election, const BiasedVector<Scalar>& x,
                         const Scalar& alpha, const Scalar& beta) {
  const Scalar bound = alpha * r_curve(election, x).integral();
  const PairwiseMatrix s = pairwise_margins(election);
  for (Candidate k = 0; k < election.candidate_count(); ++k) {
    if (k == x.i_star) continue;
    if (from_rational<Scalar>(s(k, x.i_star)) >= beta && x.x[k] > bound) return false;
  }
  return true;
}

template <class Scalar>
bool check_ab_consistent_pairwise(const ElectionInstance& election,
                                  const BiasedVector<Scalar>& x, const Scalar& alpha,
                                  const Scalar& beta) {
  const Scalar bound = alpha * r_curve(election, x).integral();
  const PairwiseMatrix s = pairwise_margins(election);
  for (Candidate k = 0; k < election.candidate_count(); ++k) {
    for (Candidate i = 0; i < election.candidate_count(); ++i) {
      if (k == i) continue;
      if (from_rational<Scalar>(s(k, i)) >= beta && x.x[k] - x.x[i] > bound) return false;
    }
  }
  return true;
}

namespace {

template <class Scalar>
std::string format_metric_impl(const MetricSpace<Scalar>& d) {
  std::ostringstream os;
  os.precision(17);
  os << d.candidate_count() << ' ' << d.block_count() << '\n';
  for (Candidate c = 0; c < d.candidate_count(); ++c) {
    for (std::size_t v = 0; v < d.block_count(); ++v) {
      if (v) os << ' ';
      if constexpr (std::is_same_v<Scalar, Rational>) {
        os << d(c, v).get_str();
      } else {
        os << d(c, v);
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

std::string format_metric(const MetricSpace<double>& d) { return format_metric_impl(d); }
std::string format_metric(const MetricSpace<Rational>& d) { return format_metric_impl(d); }

#define METRICVOTE_INSTANTIATE(S)                                                              \
  template struct BiasedVector<S>;                                                             \
  template class StepFunction<S>;                                                              \
  template S social_cost(const ElectionInstance&, const MetricSpace<S>&, Candidate);           \
  template std::vector<S> social_costs(const ElectionInstance&, const MetricSpace<S>&);        \
  template bool is_consistent(const ElectionInstance&, const MetricSpace<S>&, const S&);       \
  template bool satisfies_closure(const MetricSpace<S>&, const S&);                            \
  template std::vector<S> voter_spreads(const ElectionInstance&, const BiasedVector<S>&);      \
  template MetricSpace<S> biased_metric(const ElectionInstance&, const BiasedVector<S>&);      \
  template StepFunction<S> r_curve(const ElectionInstance&, const BiasedVector<S>&);           \
  template StepFunction<S> ell_curve(const ElectionInstance&, const BiasedVector<S>&,          \
                                     const std::vector<S>&);                                   \
  template S alpha_of_beta(const ElectionInstance&, const BiasedVector<S>&, const S&);         \
  template bool check_ab_consistent(const ElectionInstance&, const BiasedVector<S>&, const S&, \
                                    const S&);                                                 \
  template bool check_ab_consistent_pairwise(const ElectionInstance&, const BiasedVector<S>&,  \
                                             const S&, const S&);

METRICVOTE_INSTANTIATE(Rational)
METRICVOTE_INSTANTIATE(double)

#undef METRICVOTE_INSTANTIATE

}  // namespace metricvote
