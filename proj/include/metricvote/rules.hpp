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

#ifndef METRICVOTE_RULES_HPP
#define METRICVOTE_RULES_HPP

#include <cstddef>
#include <vector>

#include "metricvote/election.hpp"
#include "metricvote/lp.hpp"

namespace metricvote {

// Chooses candidate i with probability plu(i).
Distribution random_dictatorship(const ElectionInstance& election);

// Probability proportional to plu(i) / (1 - plu(i)); a point mass when some
// candidate is everyone's favorite.
Distribution smart_dictatorship(const ElectionInstance& election);

// Plurality Veto over the unit-voter expansion. `order` lists unit voters
// (indices into expand_unit_voters(election).block_of_voter); empty means
// index order. Each voter in turn decrements the score of their least
// favorite candidate with positive score; the last candidate to lose its
// final point wins.
Candidate plurality_veto(const ElectionInstance& election,
                         const std::vector<std::size_t>& order = {});

// Only the first k voters of `order` veto; the output is proportional to
// the remaining scores (the Plurality Veto winner when k = n).
Distribution k_round_plurality_veto(const ElectionInstance& election, std::size_t k,
                                    const std::vector<std::size_t>& order = {});

// Payoff s[i][j] of the Condorcet game, with 1/2 on the diagonal.
std::vector<std::vector<double>> condorcet_payoff(const ElectionInstance& election);

GameSolution condorcet_game(const ElectionInstance& election);

// Row strategy of an equilibrium of the Condorcet game.
Distribution maximal_lotteries(const ElectionInstance& election);

// The beta-consensus builder run for one voter block.
Candidate rcb_winner(const ElectionInstance& election, const PairwiseMatrix& s,
                     std::size_t block, const Threshold& beta);

Distribution rcb(const ElectionInstance& election, const Threshold& beta);

// covers[a][b]: s_{a>b} >= beta and every beta-dominator of a also
// beta-dominates b. Accepts beta in [1/2, 1).
std::vector<std::vector<bool>> covering_relation(const ElectionInstance& election,
                                                 const Threshold& beta);

std::vector<Candidate> weighted_uncovered_set(const ElectionInstance& election,
                                              const Threshold& beta);

// Each voter's favorite member of the weighted uncovered set.
Distribution radius(const ElectionInstance& election, const Threshold& beta);

// Candidates left by the forward and backward elimination passes over
// `order` (index order when empty) in the digraph a -> b iff s_{a>b} >= beta.
std::vector<Candidate> rddmis_survivors(const ElectionInstance& election, const Threshold& beta,
                                        const std::vector<Candidate>& order = {});

Distribution rddmis(const ElectionInstance& election, const Threshold& beta,
                    const std::vector<Candidate>& order = {});

// Weight-mixture of every block's favorite member of `allowed`.
Distribution favorite_in(const ElectionInstance& election, const std::vector<Candidate>& allowed);

// G(a, b) has a perfect matching for every b != a.
bool matching_uncovered_member(const ElectionInstance& election, Candidate a);

// The domination graph G(a) has a perfect matching.
bool domination_graph_member(const ElectionInstance& election, Candidate a);

// Size of a maximum matching in a bipartite graph given by left adjacency
// lists (Hopcroft-Karp).
std::size_t maximum_matching(std::size_t left, std::size_t right,
                             const std::vector<std::vector<std::size_t>>& adjacency);

}  // namespace metricvote

#endif  // METRICVOTE_RULES_HPP
