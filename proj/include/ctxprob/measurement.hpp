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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctxprob/errors.hpp"
#include "ctxprob/language.hpp"
#include "ctxprob/model.hpp"
#include "ctxprob/report.hpp"

namespace ctxprob {

/// True iff some procedure measures every property in props.
/// Throws std::invalid_argument for an empty set or an unknown property.
bool compatible(const MeasurementCatalog &catalog, const std::set<PropertyId> &props);

struct TestabilityWitness {
    std::string procedure;
    ContextId context;

    friend bool operator==(const TestabilityWitness &, const TestabilityWitness &) = default;
};

/// A witness (M, c) iff a contains no state atom, has at least one property
/// atom, all property atoms share the context c, and M measures every
/// property of a with c in C_M. Ties go to the smallest procedure id.
std::optional<TestabilityWitness> testable(const MeasurementCatalog &catalog, const Proposition &a);

/// a(c): every property atom moved to context c. Throws std::invalid_argument
/// when a's property atoms do not share one context.
Proposition substitute_context(const Proposition &a, ContextId c);

/// The four ways a mean conditional probability <p(A|B)> can be formed.
enum class MeanCase {
    BothTestable,       // (i)   A, B jointly testable
    TestableGivenState, // (ii)  A testable, B a state proposition
    StateGivenTestable, // (iii) A a state proposition, B testable
    BothState,          // (iv)  A, B state propositions
};

const char *to_string(MeanCase c);

/// Which case (a, b) falls into when averaged over procedure m.
/// Throws CaseMismatch when none applies.
MeanCase classify_mean(const Proposition &a, const Proposition &b, const MeasurementProcedure &m);

/// <p(A|B)> over C_M. Throws CaseMismatch, or ConditionNull naming the
/// micro-context where the condition has zero probability.
Number mean_conditional(const ContextualModel &model, const Proposition &a, const Proposition &b,
                        const MeasurementProcedure &m);

struct MeanConditional {
    Number value;
    MeanCase which;
    std::string procedure;  // empty for MeanCase::BothState
};

/// <p(A|B)> using the canonical procedure: the smallest id measuring every
/// property of A and B whose context contains their shared micro-context.
MeanConditional mean_conditional(const ContextualModel &model, const Proposition &a, const Proposition &b);

struct TmumpViolation {
    std::string a;
    std::string b;
    std::string procedure_m;
    std::string procedure_n;
    std::optional<double> mean_m;  // nullopt: undefined under that procedure
    std::optional<double> mean_n;
    double gap = 0.0;
};

struct TmumpResult {
    std::size_t depth = 0;
    std::size_t templates = 0;
    std::size_t pairs_checked = 0;
    std::vector<TmumpViolation> violations;
    std::optional<std::string> skipped;

    bool passed() const {
        return !skipped && violations.empty();
    }
    CheckResult check() const;
};

/// Procedure-independence of mean conditional probabilities, checked for
/// every eligible pair of propositions up to the given connective depth.
///
/// Propositions are enumerated as context-free templates: a property
/// proposition with a uniform context c0 averages over C_M by substitution,
/// so its mean depends only on the template. Templates are deduplicated by
/// their extensions at every relevant micro-context. Mixed propositions
/// (state and property atoms) are never eligible and are not generated.
TmumpResult verify_tmump(const ContextualModel &model, std::size_t depth, std::size_t max_templates = 2000);

}  // namespace ctxprob
