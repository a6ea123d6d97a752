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

#include "metricvote/election.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace metricvote {

ElectionInstance::ElectionInstance(int candidates, std::vector<Ballot> ballots)
    : m_(candidates), ballots_(std::move(ballots)) {
  if (m_ < 1) throw ValidationError("an election needs at least one candidate");
  if (ballots_.empty()) throw ValidationError("an election needs at least one voter");
  Rational total = 0;
  positions_.assign(ballots_.size() * static_cast<std::size_t>(m_), -1);
  for (std::size_t b = 0; b < ballots_.size(); ++b) {
    ballots_[b].weight.canonicalize();
    const Ballot& ballot = ballots_[b];
    if (ballot.weight <= 0) {
      throw ValidationError("voter block " + std::to_string(b) + " has a nonpositive weight");
    }
    if (static_cast<int>(ballot.ranking.size()) != m_) {
      throw ValidationError("voter block " + std::to_string(b) + " does not rank all " +
                            std::to_string(m_) + " candidates");
    }
    for (int pos = 0; pos < m_; ++pos) {
      Candidate c = ballot.ranking[pos];
      if (c < 0 || c >= m_) {
        throw ValidationError("voter block " + std::to_string(b) + " names unknown candidate " +
                              std::to_string(c));
      }
      int& slot = positions_[b * static_cast<std::size_t>(m_) + c];
      if (slot != -1) {
        throw ValidationError("voter block " + std::to_string(b) + " ranking repeats candidate " +
                              std::to_string(c));
      }
      slot = pos;
    }
    total += ballot.weight;
  }
  for (Ballot& ballot : ballots_) ballot.weight /= total;
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> tokens;
  std::string token;
  while (is >> token) tokens.push_back(token);
  return tokens;
}

int parse_int(const std::string& token, std::size_t line_no) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw ParseError("line " + std::to_string(line_no) + ": expected an integer, got '" + token +
                     "'");
  }
  return static_cast<int>(value);
}

}  // namespace

ElectionInstance load_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;
    rows.emplace_back(line_no, std::move(tokens));
  }
  if (rows.empty()) throw ParseError("empty instance");
  const auto& [header_line, header] = rows.front();
  if (header.size() != 2) {
    throw ParseError("line " + std::to_string(header_line) + ": header must be 'm k'");
  }
  int m = parse_int(header[0], header_line);
  int k = parse_int(header[1], header_line);
  if (m < 1 || k < 1) {
    throw ParseError("line " + std::to_string(header_line) + ": m and k must be positive");
  }
  if (rows.size() != static_cast<std::size_t>(k) + 1) {
    throw ParseError("expected " + std::to_string(k) + " voter lines, found " +
                     std::to_string(rows.size() - 1));
  }
  std::vector<Ballot> ballots;
  ballots.reserve(k);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& [no, tokens] = rows[r];
    if (tokens.size() != static_cast<std::size_t>(m) + 1) {
      throw ParseError("line " + std::to_string(no) + ": expected a weight and " +
                       std::to_string(m) + " candidates");
    }
    Ballot ballot;
    try {
      ballot.weight = parse_rational(tokens[0]);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(no) + ": " + e.what());
    }
    for (std::size_t t = 1; t < tokens.size(); ++t) ballot.ranking.push_back(parse_int(tokens[t], no));
    ballots.push_back(std::move(ballot));
  }
  return ElectionInstance(m, std::move(ballots));
}

ElectionInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_instance(buffer.str());
}

std::string format_instance(const ElectionInstance& election) {
  std::ostringstream os;
  os << election.candidate_count() << ' ' << election.block_count() << '\n';
  for (const Ballot& ballot : election.ballots()) {
    os << ballot.weight.get_str();
    for (Candidate c : ballot.ranking) os << ' ' << c;
    os << '\n';
  }
  return os.str();
}

PairwiseMatrix::PairwiseMatrix(int m, DiagonalMode mode)
    : m_(m), mode_(mode), s_(static_cast<std::size_t>(m) * m) {
  if (mode == DiagonalMode::kHalf) {
    for (int i = 0; i < m; ++i) (*this)(i, i) = Rational(1, 2);
  }
}

PairwiseMatrix pairwise_margins(const ElectionInstance& election, DiagonalMode mode) {
  const int m = election.candidate_count();
  PairwiseMatrix s(m, mode);
  for (const Ballot& ballot : election.ballots()) {
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) s(ballot.ranking[a], ballot.ranking[b]) += ballot.weight;
    }
  }
  return s;
}

Distribution Distribution::exact(std::vector<Rational> p) {
  Distribution d;
  d.p_.reserve(p.size());
  for (Rational& q : p) {
    q.canonicalize();
    if (q < 0) throw ValidationError("negative probability");
    d.p_.push_back(q.get_d());
  }
  d.exact_ = std::move(p);
  return d;
}

Distribution Distribution::approximate(std::vector<double> p) {
  Distribution d;
  d.p_ = std::move(p);
  return d;
}

Distribution Distribution::point_mass(int m, Candidate c) {
  std::vector<Rational> p(m);
  p[c] = 1;
  return exact(std::move(p));
}

const std::vector<Rational>& Distribution::exact_probabilities() const {
  if (!exact_) throw std::logic_error("distribution has no exact form");
  return *exact_;
}

std::vector<Candidate> Distribution::support() const {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    bool positive = exact_ ? (*exact_)[i] > 0 : p_[i] > 0.0;
    if (positive) out.push_back(static_cast<Candidate>(i));
  }
  return out;
}

double Distribution::total_variation(const Distribution& other) const {
  double tv = 0.0;
  for (std::size_t i = 0; i < p_.size(); ++i) tv += std::abs(p_[i] - other.p_[i]);
  return tv / 2.0;
}

std::string Distribution::to_string() const {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (i) os << ", ";
    os << i << ": ";
    if (exact_) {
      os << (*exact_)[i].get_str();
    } else {
      os << p_[i];
    }
  }
  return os.str();
}

Distribution mixture(const std::vector<Rational>& weights, const std::vector<Distribution>& parts) {
  if (weights.size() != parts.size() || parts.empty()) {
    throw std::invalid_argument("mixture needs one weight per part");
  }
  const std::size_t m = parts.front().size();
  bool exact = std::all_of(parts.begin(), parts.end(), [](const Distribution& d) { return d.is_exact(); });
  if (!exact) {
    std::vector<double> w;
    for (const Rational& q : weights) w.push_back(q.get_d());
    return mixture(w, parts);
  }
  std::vector<Rational> p(m);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (weights[k] == 0) continue;
    const auto& q = parts[k].exact_probabilities();
    for (std::size_t i = 0; i < m; ++i) p[i] += weights[k] * q[i];
  }
  return Distribution::exact(std::move(p));
}

Distribution mixture(const std::vector<double>& weights, const std::vector<Distribution>& parts) {
  if (weights.size() != parts.size() || parts.empty()) {
    throw std::invalid_argument("mixture needs one weight per part");
  }
  const std::size_t m = parts.front().size();
  std::vector<double> p(m, 0.0);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (std::size_t i = 0; i < m; ++i) p[i] += weights[k] * parts[k][i];
  }
  return Distribution::approximate(std::move(p));
}

std::vector<Rational> plurality_scores(const ElectionInstance& election) {
  std::vector<Rational> plu(election.candidate_count());
  for (const Ballot& ballot : election.ballots()) plu[ballot.ranking.front()] += ballot.weight;
  return plu;
}

Distribution plurality(const ElectionInstance& election) {
  return Distribution::exact(plurality_scores(election));
}

ElectionInstance gen_random(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw ValidationError("gen_random needs m >= 1 and n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Ballot> ballots;
  ballots.reserve(n);
  for (int v = 0; v < n; ++v) {
    Ballot ballot{1, std::vector<Candidate>(m)};
    std::iota(ballot.ranking.begin(), ballot.ranking.end(), 0);
    // Fisher-Yates with an explicit draw so the stream does not depend on the
    // standard library's shuffle.
    for (int i = m - 1; i > 0; --i) {
      std::uniform_int_distribution<int> pick(0, i);
      std::swap(ballot.ranking[i], ballot.ranking[pick(rng)]);
    }
    ballots.push_back(std::move(ballot));
  }
  return ElectionInstance(m, std::move(ballots));
}

std::vector<ElectionInstance> gen_corpus(std::size_t count, int m_lo, int m_hi, int n_lo,
                                         int n_hi, std::uint64_t seed) {
  if (m_lo < 1 || n_lo < 1 || m_hi < m_lo || n_hi < n_lo) {
    throw ValidationError("invalid corpus ranges");
  }
  std::mt19937_64 rng(seed);
  std::vector<ElectionInstance> corpus;
  corpus.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    std::uniform_int_distribution<int> pick_m(m_lo, m_hi);
    std::uniform_int_distribution<int> pick_n(n_lo, n_hi);
    int m = pick_m(rng);
    int n = pick_n(rng);
    corpus.push_back(gen_random(m, n, rng()));
  }
  return corpus;
}

namespace {

void check_beta(const Rational& beta) {
  if (beta <= Rational(1, 2) || beta >= 1) throw ValidationError("beta must lie in (1/2, 1)");
}

}  // namespace

RadiusLowerBound gen_radius_lb(Rational beta, int u_size) {
  beta.canonicalize();
  check_beta(beta);
  if (u_size < 2) throw ValidationError("gen_radius_lb needs |U| >= 2");
  const Candidate i_star = 0;
  const Candidate k_star = 1;
  std::vector<Candidate> u(u_size);
  std::iota(u.begin(), u.end(), 2);
  std::vector<Ballot> ballots;
  const Rational agree_weight = (1 - beta) / u_size;
  const Rational split_weight = beta / u_size;
  for (int s = 0; s < u_size; ++s) {
    Ballot ballot{agree_weight, {i_star}};
    for (int r = 0; r < u_size; ++r) ballot.ranking.push_back(u[(s + r) % u_size]);
    ballot.ranking.push_back(k_star);
    ballots.push_back(std::move(ballot));
  }
  for (int j = 0; j < u_size; ++j) {
    Ballot ballot{split_weight, {u[j], k_star, i_star}};
    for (int r = 1; r < u_size; ++r) ballot.ranking.push_back(u[(j + r) % u_size]);
    ballots.push_back(std::move(ballot));
  }
  return {ElectionInstance(u_size + 2, std::move(ballots)), i_star, k_star, std::move(u)};
}

RcbLowerBound gen_rcb_lb(Rational beta, int t) {
  beta.canonicalize();
  check_beta(beta);
  if (t < 2) throw ValidationError("gen_rcb_lb needs T >= 2");
  const Rational loyal = 1 - beta - Rational(1, t);
  if (loyal <= 0) throw ValidationError("gen_rcb_lb needs 1 - beta - 1/T > 0");
  const Candidate i_star = 0;
  std::vector<std::vector<Candidate>> tiers(t + 1, std::vector<Candidate>(t));
  for (int tier = 0; tier <= t; ++tier) {
    for (int r = 0; r < t; ++r) tiers[tier][r] = 1 + tier * t + r;
  }
  // tiers[i] is C_{i+1}; rotated(i, s) lists C_{i+1} starting at offset s.
  auto append_rotated = [&](std::vector<Candidate>& out, int tier, int s) {
    for (int r = 0; r < t; ++r) out.push_back(tiers[tier][(s + r) % t]);
  };
  auto append_rotated_without = [&](std::vector<Candidate>& out, int tier, int s) {
    for (int r = 1; r < t; ++r) out.push_back(tiers[tier][(s + r) % t]);
  };
  std::vector<Ballot> ballots;
  const Rational tt = Rational(t) * t;
  for (int s = 0; s < t; ++s) {
    Ballot ballot{loyal / t, {i_star}};
    for (int tier = t; tier >= 0; --tier) append_rotated(ballot.ranking, tier, s);
    ballots.push_back(std::move(ballot));
  }
  for (int s = 0; s < t; ++s) {
    Ballot ballot{Rational(1) / tt, {}};
    for (int tier = t; tier >= 0; --tier) append_rotated(ballot.ranking, tier, s);
    ballot.ranking.push_back(i_star);
    ballots.push_back(std::move(ballot));
  }
  for (int level = 1; level <= t; ++level) {
    for (int s = 0; s < t; ++s) {
      Ballot ballot{beta / tt, {}};
      for (int tier = level - 1; tier >= 0; --tier) append_rotated_without(ballot.ranking, tier, s);
      ballot.ranking.push_back(i_star);
      for (int tier = t; tier >= level; --tier) append_rotated(ballot.ranking, tier, s);
      for (int tier = level - 1; tier >= 0; --tier) ballot.ranking.push_back(tiers[tier][s]);
      ballots.push_back(std::move(ballot));
    }
  }
  const int m = 1 + (t + 1) * t;
  return {ElectionInstance(m, std::move(ballots)), i_star, std::move(tiers)};
}

UnitExpansion expand_unit_voters(const ElectionInstance& election, std::size_t cap) {
  mpz_class lcm = 1;
  for (const Ballot& ballot : election.ballots()) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), ballot.weight.get_den_mpz_t());
  }
  std::vector<mpz_class> counts;
  mpz_class g = 0;
  for (const Ballot& ballot : election.ballots()) {
    mpz_class c = ballot.weight.get_num() * (lcm / ballot.weight.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    counts.push_back(c);
  }
  mpz_class total = 0;
  for (mpz_class& c : counts) {
    c /= g;
    total += c;
  }
  if (total > mpz_class(static_cast<unsigned long>(cap))) {
    throw ValidationError("unit-voter expansion needs " + total.get_str() +
                          " voters, above the cap of " + std::to_string(cap));
  }
  UnitExpansion out;
  out.block_of_voter.reserve(total.get_ui());
  for (std::size_t b = 0; b < counts.size(); ++b) {
    for (unsigned long r = 0; r < counts[b].get_ui(); ++r) out.block_of_voter.push_back(b);
  }
  return out;
}

}  // namespace metricvote
