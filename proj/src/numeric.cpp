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

#include "metricvote/numeric.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace metricvote {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    const mpz_class q{std::string(den)};
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    result = Rational(mpz_class{std::string(num)}, q);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    }
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const mpz_class digits{std::string(whole.empty() ? "0" : whole) + std::string(frac)};
    result = Rational(digits, scale);
  } else {
    if (!all_digits(s)) throw ParseError("malformed number '" + std::string(text) + "'");
    result = Rational(mpz_class{std::string(s)});
  }
  result.canonicalize();
  if (negative) result = -result;
  return result;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Threshold::Threshold(Rational exact) {
  exact.canonicalize();
  value_ = std::move(exact);
}

Threshold::Threshold(double approximate) : value_(approximate) {
  if (!std::isfinite(approximate)) throw ValidationError("threshold must be finite");
}

Threshold Threshold::parse(std::string_view text) {
  try {
    return Threshold(parse_rational(text));
  } catch (const ParseError&) {
  }
  std::string owned(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(owned, &used);
  } catch (const std::exception&) {
    throw ParseError("malformed threshold '" + owned + "'");
  }
  if (used != owned.size()) throw ParseError("malformed threshold '" + owned + "'");
  return Threshold(v);
}

const Rational& Threshold::exact() const {
  if (!is_exact()) throw std::logic_error("threshold is not exact");
  return std::get<Rational>(value_);
}

double Threshold::value() const {
  if (is_exact()) return std::get<Rational>(value_).get_d();
  return std::get<double>(value_);
}

bool Threshold::reached_by(const Rational& s) const {
  if (is_exact()) return s >= std::get<Rational>(value_);
  return s.get_d() >= std::get<double>(value_) - kTolerance;
}

bool Threshold::reached_by(double s) const {
  return s >= value() - kTolerance;
}

bool Threshold::strictly_between(double lo, double hi) const {
  if (is_exact()) {
    const Rational& q = std::get<Rational>(value_);
    return q > Rational(lo) && q < Rational(hi);
  }
  double v = std::get<double>(value_);
  return v > lo && v < hi;
}

std::string Threshold::to_string() const {
  if (is_exact()) return std::get<Rational>(value_).get_str();
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(value_);
  return os.str();
}

}  // namespace metricvote
