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

#include <span>
#include <utility>
#include <vector>

#include "ctxprob/errors.hpp"
#include "ctxprob/language.hpp"
#include "ctxprob/numeric.hpp"
#include "ctxprob/report.hpp"

namespace ctxprob {

/// A finite universe W of truth assignments with a weight per assignment.
/// The event algebra is the full power set of W.
///
/// Construction only checks shape; whether the weights form a probability
/// measure is what verify_kolmogorov reports. Zero weights are legal.
class ProbabilitySpace {
   public:
    ProbabilitySpace(std::vector<TruthAssignment> universe, std::vector<Number> weights);

    std::span<const TruthAssignment> universe() const {
        return universe_;
    }
    const std::vector<Number> &weights() const {
        return weights_;
    }
    std::size_t size() const {
        return universe_.size();
    }
    /// True when every weight is exact.
    bool is_exact() const;

   private:
    std::vector<TruthAssignment> universe_;
    std::vector<Number> weights_;
};

/// Sum of weights over the event. Throws std::invalid_argument when the event
/// is not a subset of this universe.
Number xi(const ProbabilitySpace &space, const Event &event);

/// xi(Ext(a)).
Number probability(const ProbabilitySpace &space, const Proposition &a);

/// xi(Ext(a) ∩ Ext(b)) / xi(Ext(b)); throws ConditionNull when xi(Ext(b)) == 0.
Number mu_conditional(const ProbabilitySpace &space, const Proposition &a, const Proposition &b);
Number mu_conditional(const ProbabilitySpace &space, const Event &a, const Event &b);

/// Checks total mass, non-negativity and finite additivity. Additivity is
/// checked over every pair of disjoint events when |W| <= 8 and over a fixed
/// pseudo-random family of disjoint pairs otherwise.
Report verify_kolmogorov(const ProbabilitySpace &space, double eps = kMassTolerance);

/// Returns (p(B) p(A|B), p(A) p(B|A)). Throws ConditionNull when either
/// proposition has zero probability.
std::pair<Number, Number> bayes_identity(const ProbabilitySpace &space, const Proposition &a, const Proposition &b);

}  // namespace ctxprob
