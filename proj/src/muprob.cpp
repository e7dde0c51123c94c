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

#include "ctxprob/muprob.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace ctxprob {

ProbabilitySpace::ProbabilitySpace(std::vector<TruthAssignment> universe, std::vector<Number> weights)
    : universe_(std::move(universe)), weights_(std::move(weights)) {
    if (universe_.empty()) {
        throw std::invalid_argument("probability space needs a non-empty universe");
    }
    if (universe_.size() != weights_.size()) {
        throw std::invalid_argument("one weight per truth assignment is required");
    }
}

bool ProbabilitySpace::is_exact() const {
    return std::all_of(weights_.begin(), weights_.end(), [](const Number &w) { return w.is_exact(); });
}

Number xi(const ProbabilitySpace &space, const Event &event) {
    if (event.size() != space.size()) {
        throw std::invalid_argument("event is not a subset of the universe");
    }
    Number total = Number::integer(0);
    for (auto i = event.find_first(); i != Event::npos; i = event.find_next(i)) {
        total += space.weights()[i];
    }
    return total;
}

Number probability(const ProbabilitySpace &space, const Proposition &a) {
    return xi(space, extension(space.universe(), a));
}

Number mu_conditional(const ProbabilitySpace &space, const Event &a, const Event &b) {
    Number denom = xi(space, b);
    if (denom.is_zero()) {
        throw ConditionNull("conditioning event has zero weight");
    }
    return xi(space, a & b) / denom;
}

Number mu_conditional(const ProbabilitySpace &space, const Proposition &a, const Proposition &b) {
    return mu_conditional(space, extension(space.universe(), a), extension(space.universe(), b));
}

namespace {

std::string describe(const Event &e) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (auto i = e.find_first(); i != Event::npos; i = e.find_next(i)) {
        out << (first ? "" : ",") << "w" << i;
        first = false;
    }
    out << "}";
    return out.str();
}

}  // namespace

Report verify_kolmogorov(const ProbabilitySpace &space, double eps) {
    Report report{"kolmogorov", {}};
    const std::size_t n = space.size();

    Event all(n);
    all.set();
    Number mass = xi(space, all);
    CheckResult total{"total_mass"};
    total.tolerance = space.is_exact() ? 0.0 : eps;
    total.gap = std::abs(1.0 - mass.to_double());
    if (!approx_equal(mass, Number::integer(1), eps)) {
        total.verdict = Verdict::Fail;
        std::ostringstream out;
        out << "mass " << mass.str() << ", deficit " << (Number::integer(1) - mass).str();
        total.detail = out.str();
    } else {
        total.detail = "mass " + mass.str();
    }
    report.add(total);

    CheckResult nonneg{"non_negativity"};
    for (std::size_t i = 0; i < n; ++i) {
        if (space.weights()[i] < Number::integer(0)) {
            nonneg.verdict = Verdict::Fail;
            nonneg.witnesses.push_back("w" + std::to_string(i) + " has weight " + space.weights()[i].str());
        }
    }
    report.add(nonneg);

    CheckResult additivity{"finite_additivity"};
    additivity.tolerance = space.is_exact() ? 0.0 : eps;
    double worst = 0.0;
    std::size_t pairs = 0;
    auto check_pair = [&](const Event &a, const Event &b) {
        ++pairs;
        Number joint = xi(space, a | b);
        Number split = xi(space, a) + xi(space, b);
        worst = std::max(worst, std::abs(joint.to_double() - split.to_double()));
        if (!approx_equal(joint, split, eps) && additivity.witnesses.size() < 5) {
            additivity.verdict = Verdict::Fail;
            additivity.witnesses.push_back(describe(a) + " + " + describe(b));
        }
    };
    if (n <= 8) {
        // Every assignment goes to a, to b, or to neither: 3^n disjoint pairs.
        std::size_t total_pairs = 1;
        for (std::size_t i = 0; i < n; ++i) {
            total_pairs *= 3;
        }
        for (std::size_t code = 0; code < total_pairs; ++code) {
            Event a(n), b(n);
            std::size_t rest = code;
            for (std::size_t i = 0; i < n; ++i, rest /= 3) {
                if (rest % 3 == 1) {
                    a.set(i);
                } else if (rest % 3 == 2) {
                    b.set(i);
                }
            }
            check_pair(a, b);
        }
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<int> pick(0, 2);
        for (int k = 0; k < 2000; ++k) {
            Event a(n), b(n);
            for (std::size_t i = 0; i < n; ++i) {
                int side = pick(rng);
                if (side == 1) {
                    a.set(i);
                } else if (side == 2) {
                    b.set(i);
                }
            }
            check_pair(a, b);
        }
    }
    additivity.gap = worst;
    additivity.detail = std::to_string(pairs) + " disjoint pairs";
    report.add(additivity);
    return report;
}

std::pair<Number, Number> bayes_identity(const ProbabilitySpace &space, const Proposition &a, const Proposition &b) {
    Event ea = extension(space.universe(), a);
    Event eb = extension(space.universe(), b);
    Number pa = xi(space, ea);
    Number pb = xi(space, eb);
    if (pa.is_zero() || pb.is_zero()) {
        throw ConditionNull("Bayes identity needs both propositions to have positive probability");
    }
    return {pb * mu_conditional(space, ea, eb), pa * mu_conditional(space, eb, ea)};
}

}  // namespace ctxprob
