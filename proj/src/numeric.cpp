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

#include "ctxprob/numeric.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ctxprob {

Number Number::exact(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    return Number(Rational(num, den));
}

const Rational &Number::rational() const {
    return std::get<Rational>(value_);
}

double Number::to_double() const {
    if (auto r = std::get_if<Rational>(&value_)) {
        return r->convert_to<double>();
    }
    return std::get<double>(value_);
}

bool Number::is_zero() const {
    if (auto r = std::get_if<Rational>(&value_)) {
        return *r == 0;
    }
    return std::get<double>(value_) == 0.0;
}

std::string Number::str() const {
    std::ostringstream out;
    if (auto r = std::get_if<Rational>(&value_)) {
        out << *r;
    } else {
        out.precision(17);
        out << std::get<double>(value_);
    }
    return out.str();
}

namespace {

template <typename Op>
void combine(std::variant<Rational, double> &lhs, const std::variant<Rational, double> &rhs, Op op) {
    auto *a = std::get_if<Rational>(&lhs);
    auto *b = std::get_if<Rational>(&rhs);
    if (a && b) {
        lhs = Rational(op(*a, *b));
        return;
    }
    double x = a ? a->convert_to<double>() : std::get<double>(lhs);
    double y = b ? b->convert_to<double>() : std::get<double>(rhs);
    lhs = double(op(x, y));
}

}  // namespace

Number &Number::operator+=(const Number &o) {
    combine(value_, o.value_, [](const auto &x, const auto &y) { return x + y; });
    return *this;
}

Number &Number::operator-=(const Number &o) {
    combine(value_, o.value_, [](const auto &x, const auto &y) { return x - y; });
    return *this;
}

Number &Number::operator*=(const Number &o) {
    combine(value_, o.value_, [](const auto &x, const auto &y) { return x * y; });
    return *this;
}

Number &Number::operator/=(const Number &o) {
    if (o.is_zero()) {
        throw std::domain_error("division by zero probability");
    }
    combine(value_, o.value_, [](const auto &x, const auto &y) { return x / y; });
    return *this;
}

Number Number::operator-() const {
    return Number::integer(0) - *this;
}

bool operator<(const Number &a, const Number &b) {
    if (a.is_exact() && b.is_exact()) {
        return a.rational() < b.rational();
    }
    return a.to_double() < b.to_double();
}

bool operator==(const Number &a, const Number &b) {
    if (a.is_exact() && b.is_exact()) {
        return a.rational() == b.rational();
    }
    return a.to_double() == b.to_double();
}

Number abs(const Number &x) {
    return x < Number::integer(0) ? -x : x;
}

bool approx_equal(const Number &a, const Number &b, double eps) {
    if (a.is_exact() && b.is_exact()) {
        return a.rational() == b.rational();
    }
    return std::abs(a.to_double() - b.to_double()) <= eps;
}

bool approx_leq(const Number &a, const Number &b, double eps) {
    if (a.is_exact() && b.is_exact()) {
        return a.rational() <= b.rational();
    }
    return a.to_double() <= b.to_double() + eps;
}

namespace {

double parse_plain(const std::string &s) {
    if (s.empty()) {
        throw std::invalid_argument("empty number");
    }
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) {
        throw std::invalid_argument("bad number '" + s + "'");
    }
    return v;
}

}  // namespace

double parse_angle(const std::string &raw) {
    std::string text;
    for (char ch : raw) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            text.push_back(ch);
        }
    }
    try {
        std::string numer = text;
        double denom = 1.0;
        if (auto slash = text.find('/'); slash != std::string::npos) {
            numer = text.substr(0, slash);
            denom = parse_plain(text.substr(slash + 1));
            if (denom == 0.0) {
                throw std::invalid_argument("zero denominator");
            }
        }
        double value;
        if (auto p = numer.find("pi"); p != std::string::npos) {
            if (p + 2 != numer.size()) {
                throw std::invalid_argument("trailing characters after pi");
            }
            std::string coeff = numer.substr(0, p);
            if (!coeff.empty() && coeff.back() == '*') {
                coeff.pop_back();
            }
            double k = coeff.empty() ? 1.0 : coeff == "-" ? -1.0 : parse_plain(coeff);
            value = k * std::numbers::pi;
        } else {
            value = parse_plain(numer);
        }
        return value / denom;
    } catch (const std::invalid_argument &) {
        throw std::invalid_argument("cannot parse angle '" + raw + "'");
    } catch (const std::out_of_range &) {
        throw std::invalid_argument("cannot parse angle '" + raw + "'");
    }
}

}  // namespace ctxprob
