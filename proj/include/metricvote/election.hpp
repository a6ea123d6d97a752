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

#ifndef METRICVOTE_ELECTION_HPP
#define METRICVOTE_ELECTION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metricvote/numeric.hpp"

namespace metricvote {

// One block of identical voters: a weight and a strict ranking, most
// preferred first.
struct Ballot {
  Rational weight;
  std::vector<Candidate> ranking;
};

// Candidates 0..m-1 and a non-empty list of weighted voter blocks. Weights
// are normalized to sum to one on construction; the instance is immutable.
class ElectionInstance {
 public:
  ElectionInstance(int candidates, std::vector<Ballot> ballots);

  int candidate_count() const { return m_; }
  std::size_t block_count() const { return ballots_.size(); }
  const std::vector<Ballot>& ballots() const { return ballots_; }
  const Ballot& ballot(std::size_t block) const { return ballots_[block]; }
  const Rational& weight(std::size_t block) const { return ballots_[block].weight; }

  // Position of a candidate in a block's ranking; 0 is the top.
  int position(std::size_t block, Candidate c) const {
    return positions_[block * static_cast<std::size_t>(m_) + static_cast<std::size_t>(c)];
  }
  Candidate at(std::size_t block, int pos) const { return ballots_[block].ranking[pos]; }
  Candidate top(std::size_t block) const { return ballots_[block].ranking.front(); }
  bool prefers(std::size_t block, Candidate a, Candidate b) const {
    return position(block, a) < position(block, b);
  }

 private:
  int m_;
  std::vector<Ballot> ballots_;
  std::vector<int> positions_;
};

// Parses the line-oriented instance format: a header "m k" followed by k
// lines "w i_1 ... i_m". Blank lines and lines starting with '#' are skipped.
ElectionInstance load_instance(std::string_view text);
ElectionInstance load_instance_file(const std::string& path);
std::string format_instance(const ElectionInstance& election);

enum class DiagonalMode { kZero, kHalf };

// Exact margins s[i][j] = weight of voters ranking i above j.
class PairwiseMatrix {
 public:
  PairwiseMatrix(int m, DiagonalMode mode);

  int size() const { return m_; }
  DiagonalMode mode() const { return mode_; }
  const Rational& operator()(Candidate i, Candidate j) const {
    return s_[static_cast<std::size_t>(i) * m_ + j];
  }
  Rational& operator()(Candidate i, Candidate j) { return s_[static_cast<std::size_t>(i) * m_ + j]; }

 private:
  int m_;
  DiagonalMode mode_;
  std::vector<Rational> s_;
};

PairwiseMatrix pairwise_margins(const ElectionInstance& election,
                                DiagonalMode mode = DiagonalMode::kZero);

// A probability vector over candidates. Rules that never touch floating point
// keep the exact rational form alongside the binary64 view.
class Distribution {
 public:
  Distribution() = default;

  static Distribution exact(std::vector<Rational> p);
  static Distribution approximate(std::vector<double> p);
  static Distribution point_mass(int m, Candidate c);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probabilities() const { return p_; }
  bool is_exact() const { return exact_.has_value(); }
  const std::vector<Rational>& exact_probabilities() const;

  std::vector<Candidate> support() const;

  // sum_i |p_i - q_i| / 2
  double total_variation(const Distribution& other) const;

  std::string to_string() const;

 private:
  std::vector<double> p_;
  std::optional<std::vector<Rational>> exact_;
};

// Convex combination; exact when every component is exact and the weights
// are rational.
Distribution mixture(const std::vector<Rational>& weights, const std::vector<Distribution>& parts);
Distribution mixture(const std::vector<double>& weights, const std::vector<Distribution>& parts);

// plu(i): weight of voters whose first choice is i.
std::vector<Rational> plurality_scores(const ElectionInstance& election);
Distribution plurality(const ElectionInstance& election);

// n unit-weight voters with independent uniform rankings.
ElectionInstance gen_random(int m, int n, std::uint64_t seed);

// Random instances with m and n drawn uniformly from the given inclusive
// ranges; instance t depends only on (seed, t).
std::vector<ElectionInstance> gen_corpus(std::size_t count, int m_lo, int m_hi, int n_lo,
                                         int n_hi, std::uint64_t seed);

// Candidates i* = 0, k* = 1 and U = {2, ..., |U|+1}. A 1-beta block ranks
// i* > U > k* with U in every cyclic order; a beta block, split evenly over
// j in U, ranks j > k* > i* > (U minus j in cyclic order after j).
struct RadiusLowerBound {
  ElectionInstance election;
  Candidate i_star;
  Candidate k_star;
  std::vector<Candidate> u;
};
RadiusLowerBound gen_radius_lb(Rational beta, int u_size);

// Candidates i* = 0 and tiers C_1..C_{T+1} of size T each (tiers[t-1] is
// C_t). Orders within a tier are realized by T equal-weight cyclic shifts.
struct RcbLowerBound {
  ElectionInstance election;
  Candidate i_star;
  std::vector<std::vector<Candidate>> tiers;
};
RcbLowerBound gen_rcb_lb(Rational beta, int t);

// Integer multiplicities proportional to the block weights, for procedures
// defined over individual voters. Throws ValidationError above `cap` voters.
struct UnitExpansion {
  std::vector<std::size_t> block_of_voter;
  std::size_t voter_count() const { return block_of_voter.size(); }
};
UnitExpansion expand_unit_voters(const ElectionInstance& election, std::size_t cap = 1000000);

}  // namespace metricvote

#endif  // METRICVOTE_ELECTION_HPP
