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

#ifndef METRICVOTE_NUMERIC_HPP
#define METRICVOTE_NUMERIC_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace metricvote {

using Rational = mpq_class;
using Candidate = int;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts "p/q", an integer, or a finite decimal such as "0.875" (read
// exactly). Throws ParseError otherwise.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

// Conversion used by the Scalar-generic metric code.
template <class Scalar>
Scalar from_rational(const Rational& q);

template <>
inline Rational from_rational<Rational>(const Rational& q) {
  return q;
}

template <>
inline double from_rational<double>(const Rational& q) {
  return q.get_d();
}

inline double as_double(const Rational& q) { return q.get_d(); }
inline double as_double(double v) { return v; }

// A majority threshold such as the beta of the beta-parameterized rules.
// Rational thresholds compare exactly; real ones (e.g. sqrt(2) - 1/2) use a
// fixed 1e-12 margin so that a margin equal to beta up to rounding counts
// as reaching it.
class Threshold {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit Threshold(Rational exact);
  explicit Threshold(double approximate);

  // Decimal and fraction strings become exact; anything else is parsed as a
  // double.
  static Threshold parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const;
  double value() const;

  // True iff s >= threshold.
  bool reached_by(const Rational& s) const;
  bool reached_by(double s) const;

  // True iff lo < threshold < hi (strict on both sides).
  bool strictly_between(double lo, double hi) const;

  std::string to_string() const;

 private:
  std::variant<Rational, double> value_;
};

}  // namespace metricvote

#endif  // METRICVOTE_NUMERIC_HPP
