// Copyright 2026 The ctxprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace ctxprob {

/// Tolerance for comparing two probabilities computed in floating point.
inline constexpr double kCompareTolerance = 1e-9;
/// Tolerance on total mass (weights summing to one).
inline constexpr double kMassTolerance = 1e-9;

using Rational = boost::multiprecision::cpp_rational;

/// A probability-valued quantity that is either an exact rational or a binary
/// double. Arithmetic between two exact values stays exact; any double operand
/// makes the result a double.
class Number {
   public:
    Number() : value_(Rational(0)) {
    }
    Number(double v) : value_(v) {
    }
    Number(const Rational &v) : value_(v) {
    }

    static Number exact(std::int64_t num, std::int64_t den = 1);
    static Number integer(std::int64_t v) {
        return exact(v, 1);
    }

    bool is_exact() const {
        return std::holds_alternative<Rational>(value_);
    }
    /// Requires is_exact().
    const Rational &rational() const;
    double to_double() const;

    bool is_zero() const;
    std::string str() const;

    Number &operator+=(const Number &o);
    Number &operator-=(const Number &o);
    Number &operator*=(const Number &o);
    /// Throws std::domain_error on division by an exact or floating zero.
    Number &operator/=(const Number &o);

    friend Number operator+(Number a, const Number &b) {
        return a += b;
    }
    friend Number operator-(Number a, const Number &b) {
        return a -= b;
    }
    friend Number operator*(Number a, const Number &b) {
        return a *= b;
    }
    friend Number operator/(Number a, const Number &b) {
        return a /= b;
    }
    Number operator-() const;

    friend bool operator<(const Number &a, const Number &b);
    friend bool operator==(const Number &a, const Number &b);
    friend bool operator<=(const Number &a, const Number &b) {
        return !(b < a);
    }
    friend bool operator>(const Number &a, const Number &b) {
        return b < a;
    }
    friend bool operator>=(const Number &a, const Number &b) {
        return !(a < b);
    }

   private:
    std::variant<Rational, double> value_;
};

Number abs(const Number &x);

/// Exact comparison when both sides are exact, |a - b| <= eps otherwise.
bool approx_equal(const Number &a, const Number &b, double eps = kCompareTolerance);
/// a <= b, with slack eps unless both sides are exact.
bool approx_leq(const Number &a, const Number &b, double eps = kCompareTolerance);

/// Parses "0.25", "1/4", "pi", "pi/3", "2pi/3", "5*pi/6" into a double.
/// Throws std::invalid_argument on anything else.
double parse_angle(const std::string &text);

}  // namespace ctxprob
