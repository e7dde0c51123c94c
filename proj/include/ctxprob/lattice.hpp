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
#include <string>
#include <utility>
#include <vector>

#include "ctxprob/model.hpp"
#include "ctxprob/ortholattice.hpp"
#include "ctxprob/report.hpp"

namespace ctxprob {

/// The table S, E -> P_S(E) of q-probabilities of properties in states.
struct StateProbabilityFamily {
    std::vector<std::string> states;
    std::vector<std::string> properties;
    std::vector<double> values;  // row-major: values[s * properties.size() + e]

    std::size_t state_count() const {
        return states.size();
    }
    std::size_t property_count() const {
        return properties.size();
    }
    double at(StateId s, PropertyId e) const {
        return values.at(std::size_t(s.value) * properties.size() + e.value);
    }
    std::span<const double> row(StateId s) const {
        return std::span<const double>(values).subspan(std::size_t(s.value) * properties.size(), properties.size());
    }
};

/// P_S(E) = <p(α_Ec | α_S)> with the canonical procedure for E (smallest id)
/// and the first micro-context of that procedure.
Number q_probability(const ContextualModel &model, StateId s, PropertyId e);
StateProbabilityFamily q_probability_table(const ContextualModel &model);

/// E ≺ F iff P_S(E) <= P_S(F) + eps for every state, with the induced
/// equivalence classes and the partial order on the quotient.
struct PropertyPreorder {
    std::vector<std::vector<bool>> relation;  // relation[e][f]: e ≺ f
    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::size_t> class_of;
    std::vector<std::vector<bool>> quotient;  // quotient[i][j]: class i below class j
    double tolerance = kCompareTolerance;

    bool precedes(PropertyId e, PropertyId f) const {
        return relation[e.value][f.value];
    }
    /// True when ≺ is antisymmetric on the properties themselves.
    bool is_partial_order() const {
        return classes.size() == relation.size();
    }
};

PropertyPreorder build_preorder(const StateProbabilityFamily &family, double eps = kCompareTolerance);
PropertyPreorder build_preorder(const ContextualModel &model);

/// For orthogonal e1, e2 and P(f) > 0, returns
///   lhs = P((e1 ⋓ e2) ⋒ f) / P(f),  rhs = P(e1 ⋒ f) / P(f) + P(e2 ⋒ f) / P(f),
/// which agree on distributive lattices. Throws std::invalid_argument unless
/// e1 ⊥ e2, StateExcluded when P(f) = 0.
std::pair<double, double> classical_conditioning_failure(std::span<const double> p, const OrthoLattice &lattice,
                                                         std::size_t e1, std::size_t e2, std::size_t f,
                                                         double eps = kCompareTolerance);
std::pair<double, double> classical_conditioning_failure(const StateProbabilityFamily &family,
                                                         const OrthoLattice &lattice, StateId s, PropertyId e1,
                                                         PropertyId e2, PropertyId f);

/// Checks that t_F is defined exactly on S_F = {S | P_S(F) != 0}, maps into
/// S_F, and that P_{t_F(S)}(F) = 1 within eps.
Report validate_first_kind(const StateProbabilityFamily &family, const FirstKindTransform &transform,
                           double eps = kCompareTolerance);

/// P_S(E ‖ F) = P_{t_F(S)}(E). Reads only the transform registry and the
/// probability table. Throws NoFirstKind when no transform for F is
/// registered and StateExcluded when P_S(F) = 0.
double conditional_q_probability(const StateProbabilityFamily &family, std::span<const FirstKindTransform> transforms,
                                 StateId s, PropertyId e, PropertyId f, double eps = kCompareTolerance);
double conditional_q_probability(const ContextualModel &model, StateId s, PropertyId e, PropertyId f);

/// Per-state generalized-probability-measure check of the model's table
/// against its declared lattice. Skipped when no lattice is declared.
Report check_model_gpm(const ContextualModel &model, const StateProbabilityFamily &family);

}  // namespace ctxprob
