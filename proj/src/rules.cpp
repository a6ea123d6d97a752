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

#include "metricvote/rules.hpp"

#include <algorithm>
#include <numeric>

namespace metricvote {

namespace {

void require_open_beta(const Threshold& beta) {
  if (!beta.strictly_between(0.5, 1.0)) throw ValidationError("beta must lie in (1/2, 1)");
}

void require_half_open_beta(const Threshold& beta) {
  const bool ok = beta.is_exact() ? beta.exact() >= Rational(1, 2) && beta.exact() < 1
                                  : beta.value() >= 0.5 && beta.value() < 1.0;
  if (!ok) throw ValidationError("beta must lie in [1/2, 1)");
}

std::vector<std::size_t> resolve_order(const std::vector<std::size_t>& order, std::size_t n) {
  if (order.empty()) {
    std::vector<std::size_t> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    return identity;
  }
  std::vector<bool> seen(n, false);
  if (order.size() != n) throw ValidationError("voter order must list every unit voter once");
  for (std::size_t v : order) {
    if (v >= n || seen[v]) throw ValidationError("voter order must list every unit voter once");
    seen[v] = true;
  }
  return order;
}

struct VetoState {
  std::vector<long> score;
  Candidate last_vetoed = -1;
};

VetoState run_vetoes(const ElectionInstance& election, const UnitExpansion& units,
                     const std::vector<std::size_t>& order, std::size_t rounds) {
  const int m = election.candidate_count();
  VetoState state{std::vector<long>(m, 0)};
  for (std::size_t block : units.block_of_voter) ++state.score[election.top(block)];
  for (std::size_t r = 0; r < rounds; ++r) {
    const std::size_t block = units.block_of_voter[order[r]];
    for (int pos = m - 1; pos >= 0; --pos) {
      Candidate c = election.at(block, pos);
      if (state.score[c] > 0) {
        --state.score[c];
        state.last_vetoed = c;
        break;
      }
    }
  }
  return state;
}

}  // namespace

Distribution random_dictatorship(const ElectionInstance& election) { return plurality(election); }

Distribution smart_dictatorship(const ElectionInstance& election) {
  const std::vector<Rational> plu = plurality_scores(election);
  for (Candidate c = 0; c < election.candidate_count(); ++c) {
    if (plu[c] == 1) return Distribution::point_mass(election.candidate_count(), c);
  }
  std::vector<Rational> q(plu.size());
  Rational total = 0;
  for (std::size_t i = 0; i < plu.size(); ++i) {
    q[i] = plu[i] / (1 - plu[i]);
    total += q[i];
  }
  for (Rational& v : q) v /= total;
  return Distribution::exact(std::move(q));
}

Candidate plurality_veto(const ElectionInstance& election, const std::vector<std::size_t>& order) {
  const UnitExpansion units = expand_unit_voters(election);
  const std::vector<std::size_t> seq = resolve_order(order, units.voter_count());
  return run_vetoes(election, units, seq, seq.size()).last_vetoed;
}

Distribution k_round_plurality_veto(const ElectionInstance& election, std::size_t k,
                                    const std::vector<std::size_t>& order) {
  const UnitExpansion units = expand_unit_voters(election);
  const std::size_t n = units.voter_count();
  if (k > n) throw ValidationError("k exceeds the number of unit voters");
  const std::vector<std::size_t> seq = resolve_order(order, n);
  VetoState state = run_vetoes(election, units, seq, k);
  if (k == n) return Distribution::point_mass(election.candidate_count(), state.last_vetoed);
  std::vector<Rational> p(election.candidate_count());
  for (std::size_t c = 0; c < p.size(); ++c) {
    p[c] = Rational(state.score[c], static_cast<long>(n - k));
    p[c].canonicalize();
  }
  return Distribution::exact(std::move(p));
}

std::vector<std::vector<double>> condorcet_payoff(const ElectionInstance& election) {
  const PairwiseMatrix s = pairwise_margins(election, DiagonalMode::kHalf);
  const int m = election.candidate_count();
  std::vector<std::vector<double>> a(m, std::vector<double>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a[i][j] = s(i, j).get_d();
  }
  return a;
}

GameSolution condorcet_game(const ElectionInstance& election) {
  return solve_zero_sum(condorcet_payoff(election));
}

Distribution maximal_lotteries(const ElectionInstance& election) {
  return condorcet_game(election).row_strategy;
}

Candidate rcb_winner(const ElectionInstance& election, const PairwiseMatrix& s, std::size_t block,
                     const Threshold& beta) {
  const int m = election.candidate_count();
  std::vector<bool> eliminated(m, false);
  int pos = m - 1;
  for (;;) {
    const Candidate i = election.at(block, pos);
    for (int above = 0; above < pos; ++above) {
      const Candidate j = election.at(block, above);
      if (!eliminated[j] && beta.reached_by(s(i, j))) eliminated[j] = true;
    }
    int next = pos - 1;
    while (next >= 0 && eliminated[election.at(block, next)]) --next;
    if (next < 0) return i;
    pos = next;
  }
}

Distribution rcb(const ElectionInstance& election, const Threshold& beta) {
  require_open_beta(beta);
  const PairwiseMatrix s = pairwise_margins(election);
  std::vector<Rational> p(election.candidate_count());
  for (std::size_t v = 0; v < election.block_count(); ++v) {
    p[rcb_winner(election, s, v, beta)] += election.weight(v);
  }
  return Distribution::exact(std::move(p));
}

std::vector<std::vector<bool>> covering_relation(const ElectionInstance& election,
                                                 const Threshold& beta) {
  require_half_open_beta(beta);
  const PairwiseMatrix s = pairwise_margins(election);
  const int m = election.candidate_count();
  std::vector<std::vector<bool>> dominates(m, std::vector<bool>(m, false));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) dominates[a][b] = a != b && beta.reached_by(s(a, b));
  }
  std::vector<std::vector<bool>> covers(m, std::vector<bool>(m, false));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (!dominates[a][b]) continue;
      bool ok = true;
      for (int c = 0; c < m && ok; ++c) {
        if (dominates[c][a] && !dominates[c][b]) ok = false;
      }
      covers[a][b] = ok;
    }
  }
  return covers;
}

std::vector<Candidate> weighted_uncovered_set(const ElectionInstance& election,
                                              const Threshold& beta) {
  const auto covers = covering_relation(election, beta);
  const int m = election.candidate_count();
  std::vector<Candidate> out;
  for (int b = 0; b < m; ++b) {
    bool covered = false;
    for (int a = 0; a < m && !covered; ++a) covered = covers[a][b];
    if (!covered) out.push_back(b);
  }
  return out;
}

Distribution favorite_in(const ElectionInstance& election, const std::vector<Candidate>& allowed) {
  if (allowed.empty()) throw std::logic_error("favorite_in needs a non-empty candidate set");
  std::vector<bool> member(election.candidate_count(), false);
  for (Candidate c : allowed) member[c] = true;
  std::vector<Rational> p(election.candidate_count());
  for (std::size_t v = 0; v < election.block_count(); ++v) {
    for (Candidate c : election.ballot(v).ranking) {
      if (member[c]) {
        p[c] += election.weight(v);
        break;
      }
    }
  }
  return Distribution::exact(std::move(p));
}

Distribution radius(const ElectionInstance& election, const Threshold& beta) {
  require_open_beta(beta);
  return favorite_in(election, weighted_uncovered_set(election, beta));
}

std::vector<Candidate> rddmis_survivors(const ElectionInstance& election, const Threshold& beta,
                                        const std::vector<Candidate>& order) {
  require_open_beta(beta);
  const int m = election.candidate_count();
  std::vector<Candidate> seq = order;
  if (seq.empty()) {
    seq.resize(m);
    std::iota(seq.begin(), seq.end(), 0);
  }
  {
    std::vector<Candidate> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Candidate> identity(m);
    std::iota(identity.begin(), identity.end(), 0);
    if (sorted != identity) throw ValidationError("candidate order must be a permutation");
  }
  const PairwiseMatrix s = pairwise_margins(election);
  std::vector<bool> eliminated(m, false);
  for (int i = 0; i < m; ++i) {
    if (eliminated[seq[i]]) continue;
    for (int j = i + 1; j < m; ++j) {
      if (beta.reached_by(s(seq[i], seq[j]))) eliminated[seq[j]] = true;
    }
  }
  for (int i = m - 1; i >= 0; --i) {
    if (eliminated[seq[i]]) continue;
    for (int j = 0; j < i; ++j) {
      if (beta.reached_by(s(seq[i], seq[j]))) eliminated[seq[j]] = true;
    }
  }
  std::vector<Candidate> out;
  for (Candidate c = 0; c < m; ++c) {
    if (!eliminated[c]) out.push_back(c);
  }
  return out;
}

Distribution rddmis(const ElectionInstance& election, const Threshold& beta,
                    const std::vector<Candidate>& order) {
  return favorite_in(election, rddmis_survivors(election, beta, order));
}

namespace {

// Perfect matching over unit voters when block u may be matched to block
// v exactly where edge(u, v) holds.
template <class Edge>
bool has_perfect_matching(const ElectionInstance& election, Edge edge) {
  const UnitExpansion units = expand_unit_voters(election);
  const std::size_t n = units.voter_count();
  const std::size_t k = election.block_count();
  std::vector<std::vector<bool>> block_edge(k, std::vector<bool>(k));
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = 0; v < k; ++v) block_edge[u][v] = edge(u, v);
  }
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (block_edge[units.block_of_voter[a]][units.block_of_voter[b]]) adjacency[a].push_back(b);
    }
  }
  return maximum_matching(n, n, adjacency) == n;
}

}  // namespace

bool matching_uncovered_member(const ElectionInstance& election, Candidate a) {
  const int m = election.candidate_count();
  for (Candidate b = 0; b < m; ++b) {
    if (b == a) continue;
    // v -> v' iff some c with a >=_v c and c >=_{v'} b.
    const bool ok = has_perfect_matching(election, [&](std::size_t v, std::size_t w) {
      for (int pos = election.position(v, a); pos < m; ++pos) {
        if (election.position(w, election.at(v, pos)) <= election.position(w, b)) return true;
      }
      return false;
    });
    if (!ok) return false;
  }
  return true;
}

bool domination_graph_member(const ElectionInstance& election, Candidate a) {
  return has_perfect_matching(election, [&](std::size_t v, std::size_t w) {
    return election.position(v, a) <= election.position(v, election.top(w));
  });
}

}  // namespace metricvote
